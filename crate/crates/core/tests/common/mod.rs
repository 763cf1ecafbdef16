//! Seeded category generators shared by the integration suites.
#![allow(dead_code)]

use std::collections::HashMap;

use eulerkit::catalog;
use eulerkit::fincat::{validate_category, FinCat, Morphism, RawCategory};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Reflexive-transitive closure of a random relation on `n` points.
pub fn random_preorder(rng: &mut StdRng, n: usize, p: f64) -> FinCat {
    let mut le: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j || rng.gen_bool(p)).collect()).collect();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    catalog::preorder(&le)
}

/// Random poset with a top element added, so it has a terminal object.
pub fn random_with_top(rng: &mut StdRng, n: usize) -> FinCat {
    let mut le: Vec<Vec<bool>> =
        (0..n + 1).map(|i| (0..n + 1).map(|j| i == j || (i < j && rng.gen_bool(0.3))).collect()).collect();
    for i in 0..=n {
        le[i][n] = true;
    }
    for k in 0..=n {
        for i in 0..=n {
            for j in 0..=n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    catalog::preorder(&le)
}

/// Free category on a DAG whose edges go from lower to higher index.
pub fn free_category(n: usize, edges: &[(usize, usize)]) -> FinCat {
    let mut paths: Vec<(usize, usize, Vec<usize>)> = (0..n).map(|x| (x, x, Vec::new())).collect();
    let mut frontier: Vec<usize> = (0..n).collect();
    while let Some(p) = frontier.pop() {
        let (s, t, word) = paths[p].clone();
        for (e, &(a, b)) in edges.iter().enumerate() {
            if a == t {
                let mut w = word.clone();
                w.push(e);
                paths.push((s, b, w));
                frontier.push(paths.len() - 1);
            }
        }
    }
    let index: HashMap<Vec<usize>, usize> = paths
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.2.is_empty())
        .map(|(i, p)| (p.2.clone(), i))
        .collect();
    let name = |p: &(usize, usize, Vec<usize>)| {
        if p.2.is_empty() {
            format!("1v{}", p.0)
        } else {
            p.2.iter().map(|e| format!("e{e}")).collect::<Vec<_>>().join(".")
        }
    };
    let morphisms = paths.iter().map(|p| Morphism { name: name(p), src: p.0, tgt: p.1 }).collect();
    let mut composition = Vec::new();
    for (f, pf) in paths.iter().enumerate() {
        for (g, pg) in paths.iter().enumerate() {
            if pf.1 == pg.0 && !pf.2.is_empty() && !pg.2.is_empty() {
                let mut w = pf.2.clone();
                w.extend(&pg.2);
                composition.push((g, f, index[&w]));
            }
        }
    }
    let raw = RawCategory {
        objects: (0..n).map(|x| format!("v{x}")).collect(),
        morphisms,
        identities: (0..n).map(Some).collect(),
        composition,
    };
    validate_category(&raw).expect("free category")
}

pub fn random_free(rng: &mut StdRng, n: usize) -> FinCat {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for _ in 0..2 {
                if rng.gen_bool(0.25) {
                    edges.push((a, b));
                }
            }
        }
    }
    free_category(n, &edges)
}

/// Idempotent monoid `{1, e}`.
pub fn idempotent_monoid() -> FinCat {
    catalog::monoid(&["1", "e"], &[vec![0, 1], vec![1, 1]])
}

/// Hand-picked categories plus seeded random preorders, posets with a top
/// element, free categories and inflations. Small enough that products of
/// pairs stay cheap.
pub fn suite(seed: u64) -> Vec<FinCat> {
    let mut r = rng(seed);
    let mut out = vec![
        catalog::terminal(),
        catalog::empty(),
        catalog::discrete(3),
        catalog::two_arrow(),
        catalog::three_object(),
        catalog::cyclic_group(2),
        catalog::cyclic_group(3),
        catalog::klein_four(),
        catalog::full_transformation_monoid(2),
        catalog::chain(4),
        catalog::codiscrete(3),
        catalog::split_idempotent(),
        idempotent_monoid(),
        catalog::inflate(&catalog::two_arrow(), &[2, 1]),
        catalog::inflate(&catalog::cyclic_group(2), &[3]),
    ];
    for n in 2..=5 {
        out.push(random_preorder(&mut r, n, 0.3));
        out.push(random_with_top(&mut r, n - 1));
        out.push(random_free(&mut r, n));
    }
    let base = random_preorder(&mut r, 3, 0.4);
    let copies: Vec<usize> = (0..3).map(|_| r.gen_range(1..=2)).collect();
    out.push(catalog::inflate(&base, &copies));
    out
}

/// Categories with a terminal or initial object.
pub fn pointed_suite(seed: u64) -> Vec<FinCat> {
    let mut r = rng(seed);
    let mut out = vec![
        catalog::terminal(),
        catalog::two_arrow(),
        catalog::three_object(),
        catalog::codiscrete(4),
    ];
    for n in 1..=6 {
        out.push(catalog::chain(n));
    }
    for _ in 0..8 {
        let n = r.gen_range(1..=5);
        out.push(random_with_top(&mut r, n));
    }
    for _ in 0..4 {
        // opposites of posets with a top have an initial object
        let n = r.gen_range(1..=5);
        out.push(eulerkit::fincat::opposite(&random_with_top(&mut r, n)));
    }
    out
}
