//! Named finite categories and generators: discrete sets, monoids and
//! groups, posets, chaotic categories and a few small worked examples.
//! Every constructor goes through [`validate_category`] and panics only on a
//! bug in the table it builds.

use crate::fincat::{validate_category, FinCat, Morphism, RawCategory};
use crate::higher::{validate_bicat, FinBicat, RawBicat, RawHComp};

fn build(raw: RawCategory) -> FinCat {
    match validate_category(&raw) {
        Ok(c) => c,
        Err(errs) => panic!("catalog category is invalid: {errs:?}"),
    }
}

/// Builder keyed by names.
#[derive(Default)]
struct Builder {
    raw: RawCategory,
}

impl Builder {
    fn object(&mut self, name: &str) -> usize {
        self.raw.objects.push(name.to_string());
        let x = self.raw.objects.len() - 1;
        let id = self.morphism(&format!("1{name}"), x, x);
        self.raw.identities.push(Some(id));
        x
    }

    fn morphism(&mut self, name: &str, src: usize, tgt: usize) -> usize {
        self.raw.morphisms.push(Morphism { name: name.to_string(), src, tgt });
        self.raw.morphisms.len() - 1
    }

    fn comp(&mut self, g: usize, f: usize, h: usize) {
        self.raw.composition.push((g, f, h));
    }

    fn finish(self) -> FinCat {
        build(self.raw)
    }
}

/// The category 𝟙: one object, one morphism.
pub fn terminal() -> FinCat {
    discrete_named(&["*"])
}

pub fn empty() -> FinCat {
    FinCat::empty()
}

/// Only identity morphisms, objects `o0 … o(n-1)`.
pub fn discrete(n: usize) -> FinCat {
    let names: Vec<String> = (0..n).map(|i| format!("o{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    discrete_named(&refs)
}

pub fn discrete_named(names: &[&str]) -> FinCat {
    let mut s = Builder::default();
    for n in names {
        s.object(n);
    }
    s.finish()
}

/// `x → y` with a single non-identity arrow `f`.
pub fn two_arrow() -> FinCat {
    let mut s = Builder::default();
    let x = s.object("x");
    let y = s.object("y");
    s.morphism("f", x, y);
    s.finish()
}

/// `x ⇄ y → z`: `f: x → y` and `g: y → x` are mutually inverse, `h: y → z`,
/// and `h∘f: x → z`. Hom counts `[[1,1,1],[1,1,1],[0,0,1]]`.
pub fn three_object() -> FinCat {
    let mut s = Builder::default();
    let x = s.object("x");
    let y = s.object("y");
    let z = s.object("z");
    let f = s.morphism("f", x, y);
    let g = s.morphism("g", y, x);
    let h = s.morphism("h", y, z);
    let hf = s.morphism("h∘f", x, z);
    let (ix, iy) = (s.raw.identities[x].unwrap(), s.raw.identities[y].unwrap());
    s.comp(g, f, ix);
    s.comp(f, g, iy);
    s.comp(h, f, hf);
    s.comp(hf, g, h);
    s.finish()
}

/// Same category as [`three_object`]; `x ≅ y` so it has two skeleta.
pub fn skeleta_example() -> FinCat {
    three_object()
}

/// One-object category from a monoid multiplication table. Element 0 must be
/// the unit; `table[a][b]` is `a · b`, read as `a ∘ b`.
pub fn monoid(names: &[&str], table: &[Vec<usize>]) -> FinCat {
    let mut raw = RawCategory {
        objects: vec!["*".into()],
        morphisms: names
            .iter()
            .map(|n| Morphism { name: n.to_string(), src: 0, tgt: 0 })
            .collect(),
        identities: vec![Some(0)],
        composition: Vec::new(),
    };
    for (a, row) in table.iter().enumerate() {
        for (b, &c) in row.iter().enumerate() {
            raw.composition.push((a, b, c));
        }
    }
    build(raw)
}

/// ℤ/n as a one-object category.
pub fn cyclic_group(n: usize) -> FinCat {
    assert!(n >= 1);
    let names: Vec<String> = (0..n).map(|i| if i == 0 { "e".into() } else { format!("r{i}") }).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    monoid(&refs, &table)
}

/// ℤ/2 × ℤ/2.
pub fn klein_four() -> FinCat {
    let table: Vec<Vec<usize>> = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
    monoid(&["e", "a", "b", "ab"], &table)
}

/// All maps `{0..n-1} → {0..n-1}` under composition, identity first.
pub fn full_transformation_monoid(n: usize) -> FinCat {
    assert!((1..=3).contains(&n));
    let mut maps: Vec<Vec<usize>> = Vec::new();
    let total = n.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let mut f = Vec::with_capacity(n);
        for _ in 0..n {
            f.push(c % n);
            c /= n;
        }
        maps.push(f);
    }
    let id: Vec<usize> = (0..n).collect();
    let pos = maps.iter().position(|f| *f == id).unwrap();
    maps.swap(0, pos);
    let names: Vec<String> = maps
        .iter()
        .map(|f| f.iter().map(|d| d.to_string()).collect::<String>())
        .collect();
    let table: Vec<Vec<usize>> = maps
        .iter()
        .map(|g| {
            maps.iter()
                .map(|f| {
                    let gf: Vec<usize> = f.iter().map(|&i| g[i]).collect();
                    maps.iter().position(|h| *h == gf).unwrap()
                })
                .collect()
        })
        .collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    monoid(&refs, &table)
}

/// The preorder category of a reflexive, transitive relation given as a
/// boolean matrix (`le[i][j]` means `i ≤ j`). Panics on a non-preorder.
pub fn preorder(le: &[Vec<bool>]) -> FinCat {
    let n = le.len();
    let mut s = Builder::default();
    for i in 0..n {
        s.object(&format!("p{i}"));
    }
    let mut arrow = vec![None; n * n];
    for i in 0..n {
        arrow[i * n + i] = s.raw.identities[i];
        for j in 0..n {
            if i != j && le[i][j] {
                arrow[i * n + j] = Some(s.morphism(&format!("p{i}≤p{j}"), i, j));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if let (Some(f), Some(g)) = (arrow[i * n + j], arrow[j * n + k]) {
                    let h = arrow[i * n + k].expect("relation is not transitive");
                    s.comp(g, f, h);
                }
            }
        }
    }
    s.finish()
}

/// Total order `0 < 1 < … < n-1`.
pub fn chain(n: usize) -> FinCat {
    let le: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect();
    preorder(&le)
}

/// Exactly one morphism between any two objects; all objects isomorphic.
pub fn codiscrete(n: usize) -> FinCat {
    let le = vec![vec![true; n]; n];
    preorder(&le)
}

/// `f: x → y`, `g: y → x` with `f∘g = 1y` and `e = g∘f` a non-identity
/// idempotent on `x`. Objects are not isomorphic.
pub fn split_idempotent() -> FinCat {
    let mut s = Builder::default();
    let x = s.object("x");
    let y = s.object("y");
    let f = s.morphism("f", x, y);
    let g = s.morphism("g", y, x);
    let e = s.morphism("e", x, x);
    let iy = s.raw.identities[y].unwrap();
    s.comp(f, g, iy);
    s.comp(g, f, e);
    s.comp(e, e, e);
    s.comp(f, e, f);
    s.comp(e, g, g);
    s.finish()
}

/// Two objects with hom counts `[[2,2],[3,3]]`. Every composite of
/// non-identities collapses onto `e`, `p1`, `s1` or `t1`. It has a
/// coweighting but no weighting.
pub fn no_weighting() -> FinCat {
    let mut s = Builder::default();
    let a = s.object("a");
    let b = s.object("b");
    let e = s.morphism("e", a, a);
    let p: Vec<usize> = (1..=2).map(|i| s.morphism(&format!("p{i}"), a, b)).collect();
    let sec: Vec<usize> = (1..=3).map(|i| s.morphism(&format!("s{i}"), b, a)).collect();
    let t: Vec<usize> = (1..=2).map(|i| s.morphism(&format!("t{i}"), b, b)).collect();
    s.comp(e, e, e);
    for &si in &sec {
        s.comp(e, si, sec[0]);
        for &tk in &t {
            s.comp(si, tk, sec[0]);
        }
        for &pj in &p {
            s.comp(pj, si, t[0]);
            s.comp(si, pj, e);
        }
    }
    for &pj in &p {
        s.comp(pj, e, p[0]);
        for &tk in &t {
            s.comp(tk, pj, p[0]);
        }
    }
    for &tk in &t {
        for &tl in &t {
            s.comp(tk, tl, t[0]);
        }
    }
    s.finish()
}

/// Replaces object `x` by `copies[x]` mutually isomorphic copies (at least
/// one each). Hom-sets between copies are copies of the original hom-set, so
/// the result is equivalent to `c`.
pub fn inflate(c: &FinCat, copies: &[usize]) -> FinCat {
    assert_eq!(copies.len(), c.object_count());
    assert!(copies.iter().all(|&k| k >= 1));
    let mut objects = Vec::new();
    let mut base = Vec::new();
    for (x, &k) in copies.iter().enumerate() {
        for i in 0..k {
            objects.push(if i == 0 {
                c.objects()[x].clone()
            } else {
                format!("{}#{i}", c.objects()[x])
            });
            base.push(x);
        }
    }
    let n = objects.len();
    let mut morphisms = Vec::new();
    // index of the copy of f between new objects a and b
    let mut index = std::collections::HashMap::new();
    for a in 0..n {
        for b in 0..n {
            for &f in c.hom(base[a], base[b]) {
                index.insert((a, b, f), morphisms.len());
                morphisms.push(Morphism {
                    name: format!("{}@{}→{}", c.morphisms()[f].name, objects[a], objects[b]),
                    src: a,
                    tgt: b,
                });
            }
        }
    }
    let identities = (0..n).map(|a| Some(index[&(a, a, c.identity(base[a]))])).collect();
    let mut composition = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for cc in 0..n {
                for &f in c.hom(base[a], base[b]) {
                    for &g in c.hom(base[b], base[cc]) {
                        let h = c.compose(g, f).unwrap();
                        composition.push((index[&(b, cc, g)], index[&(a, b, f)], index[&(a, cc, h)]));
                    }
                }
            }
        }
    }
    build(RawCategory { objects, morphisms, identities, composition })
}

/// Two 0-cells with `𝒜(x,x) = 𝟙`, `𝒜(x,y)` discrete on `{p, q}`,
/// `𝒜(y,x)` empty and `𝒜(y,y) = ℤ/2` (unit `u`, 2-cells `id(u)`, `a`).
/// Hom χ matrix `[[1, 2], [0, 1/2]]`.
pub fn derived_bicategory_raw() -> RawBicat {
    let one = terminal().to_raw();
    let mut one_x = one.clone();
    one_x.objects = vec!["ix".into()];
    one_x.morphisms[0].name = "id(ix)".into();
    let mut d2 = discrete_named(&["p", "q"]).to_raw();
    d2.morphisms[0].name = "id(p)".into();
    d2.morphisms[1].name = "id(q)".into();
    let mut z2 = cyclic_group(2).to_raw();
    z2.objects = vec!["u".into()];
    z2.morphisms[0].name = "id(u)".into();
    z2.morphisms[1].name = "a".into();
    let homs = vec![one_x, d2, RawCategory::default(), z2];
    let n = 2;
    let mut hcomp = vec![RawHComp::default(); n * n * n];
    let t = |x: usize, y: usize, z: usize| (x * n + y) * n + z;
    // (x,x,x): ix ∘ ix = ix
    hcomp[t(0, 0, 0)].one_cells = vec![(0, 0, 0)];
    // (x,x,y): p ∘ ix = p, q ∘ ix = q
    hcomp[t(0, 0, 1)].one_cells = vec![(0, 0, 0), (1, 0, 1)];
    // (x,y,y): u ∘ p = p, u ∘ q = q; a acts trivially
    hcomp[t(0, 1, 1)].one_cells = vec![(0, 0, 0), (0, 1, 1)];
    hcomp[t(0, 1, 1)].two_cells = vec![(1, 0, 0), (1, 1, 1)];
    // (y,y,y): ℤ/2 multiplication
    hcomp[t(1, 1, 1)].one_cells = vec![(0, 0, 0)];
    hcomp[t(1, 1, 1)].two_cells = vec![(1, 0, 1), (0, 1, 1), (1, 1, 0)];
    RawBicat {
        zero_cells: vec!["x".into(), "y".into()],
        homs,
        hcomp,
        units: vec![Some(0), Some(0)],
        associators: Vec::new(),
        unitors: Vec::new(),
    }
}

pub fn derived_bicategory() -> FinBicat {
    validate_bicat(&derived_bicategory_raw()).expect("derived bicategory is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(terminal().morphism_count(), 1);
        assert_eq!(discrete(5).morphism_count(), 5);
        assert_eq!(cyclic_group(6).morphism_count(), 6);
        assert_eq!(klein_four().morphism_count(), 4);
        assert_eq!(full_transformation_monoid(3).morphism_count(), 27);
        assert_eq!(chain(4).morphism_count(), 10);
        assert_eq!(codiscrete(3).morphism_count(), 9);
        assert_eq!(split_idempotent().morphism_count(), 5);
        assert_eq!(no_weighting().morphism_count(), 10);
        let inf = inflate(&two_arrow(), &[2, 1]);
        assert_eq!((inf.object_count(), inf.morphism_count()), (3, 4 + 2 + 1));
    }

    #[test]
    fn no_weighting_hom_counts() {
        let c = no_weighting();
        let counts: Vec<usize> = (0..2).flat_map(|x| (0..2).map(move |y| (x, y))).map(|(x, y)| c.hom_count(x, y)).collect();
        assert_eq!(counts, vec![2, 2, 3, 3]);
    }
}
