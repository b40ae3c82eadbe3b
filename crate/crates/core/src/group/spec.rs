//! The group-spec mini-language.
//!
//! ```text
//! cyclic:N | ea2:M | dihedral:N | q:N | sym:N | alt:N
//! product:SPEC,SPEC[,SPEC...] | perm:gens=[CYCLES;CYCLES;...]
//! ```
//!
//! `dihedral:N` and `q:N` take the group order. Permutation generators use
//! disjoint-cycle notation on points `1..k`, e.g. `perm:gens=[(1,2,3);(1,2)]`.

use std::collections::HashMap;

use super::{Elem, FiniteGroup, GroupError};

pub const DEFAULT_ORDER_CAP: usize = 2048;

/// Builds a group from a spec string with the default order cap.
pub fn build_group(spec: &str) -> Result<FiniteGroup, GroupError> {
    build_group_with_cap(spec, DEFAULT_ORDER_CAP)
}

pub fn build_group_with_cap(spec: &str, cap: usize) -> Result<FiniteGroup, GroupError> {
    let mut g = build(spec.trim(), cap)?;
    g.set_spec(spec.trim());
    Ok(g)
}

fn malformed(spec: &str, reason: impl Into<String>) -> GroupError {
    GroupError::MalformedSpec { spec: spec.to_string(), reason: reason.into() }
}

fn build(spec: &str, cap: usize) -> Result<FiniteGroup, GroupError> {
    let (kind, arg) = spec.split_once(':').ok_or_else(|| malformed(spec, "expected KIND:ARG"))?;
    let number = || -> Result<usize, GroupError> {
        arg.trim().parse::<usize>().map_err(|_| malformed(spec, "expected a positive integer"))
    };
    let check_cap = |n: usize| if n > cap { Err(GroupError::OrderCap { cap }) } else { Ok(()) };
    match kind.trim() {
        "cyclic" => {
            let n = number()?;
            if n == 0 {
                return Err(malformed(spec, "order must be positive"));
            }
            check_cap(n)?;
            cyclic(n)
        }
        "ea2" => {
            let m = number()?;
            if m >= usize::BITS as usize - 1 {
                return Err(GroupError::OrderCap { cap });
            }
            check_cap(1 << m)?;
            elementary_abelian_2(m)
        }
        "dihedral" => {
            let n = number()?;
            if n < 2 || n % 2 != 0 {
                return Err(malformed(spec, "dihedral order must be even and at least 2"));
            }
            check_cap(n)?;
            metacyclic(n / 2, 0, true)
        }
        "q" => {
            let n = number()?;
            if n < 4 || n % 4 != 0 {
                return Err(malformed(spec, "quaternion order must be a positive multiple of 4"));
            }
            check_cap(n)?;
            metacyclic(n / 2, n / 4, false)
        }
        "sym" | "alt" => {
            let k = number()?;
            if k == 0 {
                return Err(malformed(spec, "degree must be positive"));
            }
            let gens = if kind == "sym" { symmetric_gens(k) } else { alternating_gens(k) };
            permutation_group(k, gens, cap)
        }
        "product" => {
            let parts = split_top_level(arg);
            if parts.len() < 2 {
                return Err(malformed(spec, "product needs at least two factors"));
            }
            let mut factors = Vec::new();
            for p in parts {
                if p.trim_start().starts_with("product:") {
                    return Err(malformed(spec, "nested product is ambiguous; list factors flat"));
                }
                factors.push(build(p.trim(), cap)?);
            }
            let total = factors.iter().try_fold(1usize, |acc, f| acc.checked_mul(f.order()));
            match total {
                Some(t) if t <= cap => direct_product(&factors),
                _ => Err(GroupError::OrderCap { cap }),
            }
        }
        "perm" => {
            let body = arg
                .trim()
                .strip_prefix("gens=")
                .and_then(|b| b.strip_prefix('['))
                .and_then(|b| b.strip_suffix(']'))
                .ok_or_else(|| malformed(spec, "expected perm:gens=[...]"))?;
            let mut cycle_lists = Vec::new();
            for gen in body.split(';').map(str::trim).filter(|s| !s.is_empty()) {
                cycle_lists.push(parse_cycles(gen).map_err(|r| malformed(spec, r))?);
            }
            if cycle_lists.is_empty() {
                return Err(malformed(spec, "no generators"));
            }
            let degree = cycle_lists.iter().flatten().flatten().copied().max().unwrap_or(1);
            let gens = cycle_lists.iter().map(|cycles| cycles_to_images(degree, cycles)).collect();
            permutation_group(degree as usize, gens, cap)
        }
        other => Err(malformed(spec, format!("unknown group kind {other:?}"))),
    }
}

fn letter_names(count: usize) -> Vec<String> {
    if count <= 26 {
        (0..count).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (1..=count).map(|i| format!("a{i}")).collect()
    }
}

fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    let mult = (0..n).flat_map(|x| (0..n).map(move |y| ((x + y) % n) as Elem)).collect();
    let (gens, names) = if n == 1 { (vec![], vec![]) } else { (vec![1], vec!["a".to_string()]) };
    FiniteGroup::from_table(n, mult, gens, names)
}

fn elementary_abelian_2(m: usize) -> Result<FiniteGroup, GroupError> {
    let n = 1usize << m;
    let mult = (0..n).flat_map(|x| (0..n).map(move |y| (x ^ y) as Elem)).collect();
    let gens = (0..m).map(|i| 1 << i).collect();
    let names = if m <= 4 { letter_names(m) } else { (1..=m).map(|i| format!("a{i}")).collect() };
    FiniteGroup::from_table(n, mult, gens, names)
}

/// Groups with normal form `a^i b^j` (`i < m`, `j < 2`) where `ba = a⁻¹b`
/// and `b² = a^bsq`. Dihedral: `bsq = 0`; generalized quaternion:
/// `m = 2n`, `bsq = n`.
fn metacyclic(m: usize, bsq: usize, dihedral: bool) -> Result<FiniteGroup, GroupError> {
    let n = 2 * m;
    let idx = |i: usize, j: usize| (i % m + m * j) as Elem;
    let mut mult = Vec::with_capacity(n * n);
    for x in 0..n {
        let (i, j) = (x % m, x / m);
        for y in 0..n {
            let (k, l) = (y % m, y / m);
            let z = if j == 0 {
                idx(i + k, l)
            } else if l == 0 {
                idx(i + m - k, 1)
            } else {
                idx(i + m - k + bsq, 0)
            };
            mult.push(z);
        }
    }
    let a = idx(1, 0);
    let b = idx(0, 1);
    let (gens, names) = if dihedral && m == 1 {
        (vec![b], vec!["b".to_string()])
    } else {
        (vec![a, b], vec!["a".to_string(), "b".to_string()])
    };
    FiniteGroup::from_table(n, mult, gens, names)
}

fn symmetric_gens(k: usize) -> Vec<Vec<u32>> {
    if k == 1 {
        return vec![(0..1).collect()];
    }
    let cycle: Vec<u32> = (0..k as u32).map(|i| (i + 1) % k as u32).collect();
    let mut transposition: Vec<u32> = (0..k as u32).collect();
    transposition.swap(0, 1);
    if k == 2 {
        vec![transposition]
    } else {
        vec![cycle, transposition]
    }
}

fn alternating_gens(k: usize) -> Vec<Vec<u32>> {
    let ident: Vec<u32> = (0..k as u32).collect();
    if k < 3 {
        return vec![ident];
    }
    let mut three = ident.clone();
    three[0] = 1;
    three[1] = 2;
    three[2] = 0;
    if k == 3 {
        return vec![three];
    }
    // an odd-length cycle: (1..k) for odd k, (2..k) for even k
    let start = if k % 2 == 1 { 0 } else { 1 };
    let mut long = ident;
    for i in start..k {
        long[i] = if i + 1 < k { (i + 1) as u32 } else { start as u32 };
    }
    vec![long, three]
}

fn parse_cycles(text: &str) -> Result<Vec<Vec<u32>>, String> {
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let inner_start = rest.strip_prefix('(').ok_or("expected '('")?;
        let close = inner_start.find(')').ok_or("unclosed cycle")?;
        let inner = &inner_start[..close];
        let pts: Result<Vec<u32>, _> = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<u32>())
            .collect();
        let pts = pts.map_err(|_| format!("bad point in ({inner})"))?;
        if pts.contains(&0) {
            return Err("points are numbered from 1".into());
        }
        let mut sorted = pts.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != pts.len() {
            return Err(format!("repeated point in ({inner})"));
        }
        cycles.push(pts);
        rest = inner_start[close + 1..].trim_start();
    }
    let mut all: Vec<u32> = cycles.iter().flatten().copied().collect();
    let count = all.len();
    all.sort_unstable();
    all.dedup();
    if all.len() != count {
        return Err("cycles are not disjoint".into());
    }
    Ok(cycles)
}

fn cycles_to_images(degree: u32, cycles: &[Vec<u32>]) -> Vec<u32> {
    let mut img: Vec<u32> = (0..degree).collect();
    for c in cycles {
        for (i, &p) in c.iter().enumerate() {
            img[(p - 1) as usize] = c[(i + 1) % c.len()] - 1;
        }
    }
    img
}

/// Closure of permutation generators; the product `x·y` is "apply x, then y".
fn permutation_group(degree: usize, gens: Vec<Vec<u32>>, cap: usize) -> Result<FiniteGroup, GroupError> {
    let then = |x: &[u32], y: &[u32]| -> Vec<u32> { x.iter().map(|&p| y[p as usize]).collect() };
    let identity: Vec<u32> = (0..degree as u32).collect();
    let mut elems = vec![identity.clone()];
    let mut index: HashMap<Vec<u32>, Elem> = HashMap::from([(identity, 0)]);
    let mut i = 0;
    while i < elems.len() {
        for g in &gens {
            let y = then(&elems[i], g);
            if !index.contains_key(&y) {
                if elems.len() == cap {
                    return Err(GroupError::OrderCap { cap });
                }
                index.insert(y.clone(), elems.len() as Elem);
                elems.push(y);
            }
        }
        i += 1;
    }
    let n = elems.len();
    let mut mult = Vec::with_capacity(n * n);
    for x in &elems {
        for y in &elems {
            mult.push(index[&then(x, y)]);
        }
    }
    let mut gen_elems = Vec::new();
    for g in &gens {
        let e = index[g];
        if e != 0 && !gen_elems.contains(&e) {
            gen_elems.push(e);
        }
    }
    let names = letter_names(gen_elems.len());
    FiniteGroup::from_table(n, mult, gen_elems, names)
}

fn direct_product(factors: &[FiniteGroup]) -> Result<FiniteGroup, GroupError> {
    let orders: Vec<usize> = factors.iter().map(FiniteGroup::order).collect();
    let n: usize = orders.iter().product();
    let split = |mut x: usize| -> Vec<usize> {
        orders
            .iter()
            .map(|&o| {
                let c = x % o;
                x /= o;
                c
            })
            .collect()
    };
    let join = |coords: &[usize]| -> Elem {
        let mut x = 0;
        for (c, o) in coords.iter().zip(&orders).rev() {
            x = x * o + c;
        }
        x as Elem
    };
    let coords: Vec<Vec<usize>> = (0..n).map(split).collect();
    let mut mult = Vec::with_capacity(n * n);
    let mut buf = vec![0usize; factors.len()];
    for x in 0..n {
        for y in 0..n {
            for (k, f) in factors.iter().enumerate() {
                buf[k] = f.mul(coords[x][k] as Elem, coords[y][k] as Elem) as usize;
            }
            mult.push(join(&buf));
        }
    }
    let mut gens = Vec::new();
    for (k, f) in factors.iter().enumerate() {
        for &g in f.generators() {
            let mut c = vec![0usize; factors.len()];
            c[k] = g as usize;
            gens.push(join(&c));
        }
    }
    let names = letter_names(gens.len());
    FiniteGroup::from_table(n, mult, gens, names)
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}
