//! Element names: rendering elements as words and parsing words back.

use std::collections::VecDeque;

use super::{Elem, FiniteGroup, GroupError};

/// Shortest positive word in the generators for every element, compressed
/// into `a^k` runs joined by `*`. The identity is `1`.
pub(super) fn render_all(g: &FiniteGroup) -> Vec<String> {
    let n = g.order();
    // parent[x] = (predecessor, generator slot) in a BFS over right multiplication
    let mut parent: Vec<Option<(Elem, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0 as Elem]);
    while let Some(x) = queue.pop_front() {
        for (slot, &gen) in g.generators().iter().enumerate() {
            let y = g.mul(x, gen);
            if !seen[y as usize] {
                seen[y as usize] = true;
                parent[y as usize] = Some((x, slot));
                queue.push_back(y);
            }
        }
    }
    (0..n)
        .map(|x| {
            let mut letters = Vec::new();
            let mut cur = x as Elem;
            while let Some((p, slot)) = parent[cur as usize] {
                letters.push(slot);
                cur = p;
            }
            letters.reverse();
            compress(&letters, g.gen_names())
        })
        .collect()
}

fn compress(letters: &[usize], names: &[String]) -> String {
    if letters.is_empty() {
        return "1".to_string();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < letters.len() {
        let mut j = i;
        while j < letters.len() && letters[j] == letters[i] {
            j += 1;
        }
        let name = &names[letters[i]];
        parts.push(if j - i == 1 { name.clone() } else { format!("{name}^{}", j - i) });
        i = j;
    }
    parts.join("*")
}

/// Parses `a^2*b`, `ab`, `a1a2`, `b^-1`, `1`. Generator names are matched
/// greedily, longest first; `*` between factors is optional.
pub(super) fn parse_word(g: &FiniteGroup, word: &str) -> Result<Elem, GroupError> {
    let bad = |reason: &str| GroupError::BadWord { word: word.to_string(), reason: reason.to_string() };
    let word = word.trim();
    if word.is_empty() {
        return Err(bad("empty word"));
    }
    let mut by_len: Vec<(usize, &str)> =
        g.gen_names().iter().enumerate().map(|(i, s)| (i, s.as_str())).collect();
    by_len.sort_by_key(|&(i, s)| (std::cmp::Reverse(s.len()), i));

    let mut rest = word;
    let mut acc = g.identity();
    while !rest.is_empty() {
        rest = rest.strip_prefix('*').unwrap_or(rest);
        let base = if let Some(r) = rest.strip_prefix('1') {
            rest = r;
            g.identity()
        } else {
            let (slot, name) = by_len
                .iter()
                .find(|(_, name)| rest.starts_with(name))
                .ok_or_else(|| bad(&format!("unknown generator at {rest:?}")))?;
            rest = &rest[name.len()..];
            g.generators()[*slot]
        };
        let mut exp: i64 = 1;
        if let Some(r) = rest.strip_prefix('^') {
            let end = r
                .char_indices()
                .find(|&(i, c)| !(c.is_ascii_digit() || (i == 0 && c == '-')))
                .map_or(r.len(), |(i, _)| i);
            exp = r[..end].parse().map_err(|_| bad("bad exponent"))?;
            rest = &r[end..];
        }
        acc = g.mul(acc, g.pow(base, exp));
    }
    Ok(acc)
}
