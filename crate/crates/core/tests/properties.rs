//! Randomized invariants checked against the independent oracle.

mod common;

use common::brute_force_digraph;
use haarrep::aut::is_vertex_transitive;
use haarrep::digraph::{cayley_digraph, haar_digraph, lift_permutation};
use haarrep::group::{automorphisms, build_group, Elem, FiniteGroup, GroupAutomorphism, Subset};
use haarrep::perm::Perm;
use haarrep::representations::{haar_aut_order, is_hdr};
use haarrep::synthesis::{synthesize_hdr, SynthesisConfig};
use num_bigint::BigUint;
use proptest::prelude::*;
use proptest::sample::Index;

const GROUPS: [&str; 8] = ["cyclic:3", "cyclic:4", "cyclic:5", "cyclic:6", "ea2:2", "sym:3", "dihedral:8", "q:8"];

fn group(i: Index) -> FiniteGroup {
    build_group(GROUPS[i.index(GROUPS.len())]).unwrap()
}

fn subset(n: usize, bits: u64) -> Subset {
    Subset::from_mask(n, bits & ((1 << n) - 1))
}

/// Closes `seed` under `x ↦ αx`.
fn invariant(g: &FiniteGroup, alpha: &GroupAutomorphism, seed: u64) -> Subset {
    let n = g.order();
    let mut x = Subset::empty(n);
    for e in subset(n, seed).iter() {
        let mut y = e;
        while !x.contains(y) {
            x.insert(y);
            y = alpha.apply(y);
        }
    }
    x
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    /// A permutation of G lifts to an automorphism of Haar(G,S,T) exactly when
    /// it is an automorphism of both Cay(G,S) and Cay(G,T).
    #[test]
    fn lift_equivalence_random_perms(gi: Index, s: u64, t: u64, seed: u64) {
        let g = group(gi);
        let n = g.order();
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut state = seed;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
            images.swap(i, (state >> 33) as usize % (i + 1));
        }
        let phi = Perm::from_images(images).unwrap();
        let (s, t) = (subset(n, s), subset(n, t));
        let lifted = haar_digraph(&g, &s, &t).digraph.is_automorphism(&lift_permutation(&g, &phi), false);
        let both = cayley_digraph(&g, &s).is_automorphism(&phi, false) && cayley_digraph(&g, &t).is_automorphism(&phi, false);
        prop_assert_eq!(lifted, both);
    }

    /// Same equivalence on maps `x ↦ α(x)h` with α-invariant sets, where both
    /// sides usually hold.
    #[test]
    fn lift_equivalence_affine_maps(gi: Index, ai: Index, h: Index, s: u64, t: u64) {
        let g = group(gi);
        let n = g.order();
        let auts = automorphisms(&g).unwrap();
        let alpha = auts[ai.index(auts.len())].clone();
        let h = h.index(n) as Elem;
        let phi = Perm::from_images((0..n as Elem).map(|x| g.mul(alpha.apply(x), h)).collect()).unwrap();
        let (s, t) = (invariant(&g, &alpha, s), invariant(&g, &alpha, t));
        let lifted = haar_digraph(&g, &s, &t).digraph.is_automorphism(&lift_permutation(&g, &phi), false);
        let both = cayley_digraph(&g, &s).is_automorphism(&phi, false) && cayley_digraph(&g, &t).is_automorphism(&phi, false);
        prop_assert_eq!(lifted, both);
    }

    /// Haar(G,S,S) has the swap g₀ ↔ g₁, so it is vertex-transitive and never an HDR.
    #[test]
    fn symmetric_haar_is_not_hdr(gi: Index, s: u64) {
        let g = group(gi);
        let s = subset(g.order(), s);
        let hd = haar_digraph(&g, &s, &s);
        prop_assert!(is_vertex_transitive(&hd.digraph).unwrap());
        prop_assert!(!is_hdr(&g, &s, &s).unwrap());
    }

    /// The solver's |Aut(Haar(G,S,T))| equals the brute-force count.
    #[test]
    fn haar_order_matches_oracle(gi: Index, s: u64, t: u64) {
        let g = group(gi);
        let n = g.order();
        let (s, t) = (subset(n, s), subset(n, t));
        let oracle = brute_force_digraph(&haar_digraph(&g, &s, &t).digraph, false);
        prop_assert_eq!(haar_aut_order(&g, &s, &t).unwrap(), BigUint::from(oracle));
    }
}

#[test]
fn lift_is_a_homomorphism() {
    let g = build_group("dihedral:8").unwrap();
    let auts = automorphisms(&g).unwrap();
    let perms: Vec<Perm> = auts.iter().map(|a| Perm::from_images(a.map().to_vec()).unwrap()).collect();
    for p in &perms {
        for q in &perms {
            assert_eq!(lift_permutation(&g, &p.then(q)), lift_permutation(&g, p).then(&lift_permutation(&g, q)));
        }
    }
}

/// Every certificate for a group of order at most 8 re-verifies without the solver.
#[test]
fn small_certificates_pass_the_oracle() {
    let config = SynthesisConfig::default();
    for spec in ["cyclic:1", "cyclic:2", "cyclic:3", "cyclic:4", "cyclic:5", "cyclic:6", "cyclic:7", "cyclic:8", "sym:3", "dihedral:8", "q:8", "product:cyclic:4,cyclic:2"] {
        let g = build_group(spec).unwrap();
        let cert = synthesize_hdr(&g, &config).unwrap_or_else(|e| panic!("{spec}: {e}"));
        assert!(cert.verified, "{spec}");
        let oracle = brute_force_digraph(&haar_digraph(&g, &cert.s, &cert.t).digraph, false);
        assert_eq!(oracle, g.order() as u64, "{spec}: {}", cert.strategy);
    }
}
