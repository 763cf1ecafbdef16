//! Truncated simplicial sets: standard simplices, horns, nerves, inner horn
//! filler analysis and reconstruction of a category from its nerve.
//!
//! Simplices at each level are indexed `0..count(n)`; faces and degeneracies
//! are dense index tables. Everything above the truncation level is unknown,
//! so horn conditions are only checked for `n ≤ dim`.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use thiserror::Error;

use crate::exec::Exec;
use crate::fincat::{validate_category, FinCat, Morphism, RawCategory, Violation};
use crate::magnitude::{euler_char, EulerResult};
use crate::Rational;

/// Unvalidated tables. `faces[n][i][s]` is `dᵢ` on the n-simplex `s` (for
/// `n ≥ 1`; `faces[0]` is empty), `degeneracies[n][i][s]` is `sᵢ` (for
/// `n < dim`; `degeneracies[dim]` is empty). `None` marks a missing entry.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawSSet {
    pub dim: usize,
    pub simplices: Vec<Vec<String>>,
    pub faces: Vec<Vec<Vec<Option<usize>>>>,
    pub degeneracies: Vec<Vec<Vec<Option<usize>>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SSetViolationKind {
    Shape,
    DuplicateId,
    MissingEntry,
    OutOfRange,
    /// One of the five simplicial identities, numbered 1 to 5.
    Identity(u8),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SSetViolation {
    pub kind: SSetViolationKind,
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub simplex: String,
    pub message: String,
}

impl fmt::Display for SSetViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// Validated truncated simplicial set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSSet {
    dim: usize,
    ids: Vec<Vec<String>>,
    index: Vec<HashMap<String, usize>>,
    face: Vec<Vec<Vec<usize>>>,
    degen: Vec<Vec<Vec<usize>>>,
}

impl TruncatedSSet {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn count(&self, n: usize) -> usize {
        self.ids[n].len()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.ids.iter().map(Vec::len).collect()
    }

    pub fn ids(&self, n: usize) -> &[String] {
        &self.ids[n]
    }

    pub fn id(&self, n: usize, s: usize) -> &str {
        &self.ids[n][s]
    }

    pub fn index_of(&self, n: usize, id: &str) -> Option<usize> {
        self.index.get(n)?.get(id).copied()
    }

    /// `dᵢ` of the n-simplex `s`.
    pub fn face(&self, n: usize, i: usize, s: usize) -> usize {
        self.face[n][i][s]
    }

    /// `sᵢ` of the n-simplex `s`.
    pub fn degeneracy(&self, n: usize, i: usize, s: usize) -> usize {
        self.degen[n][i][s]
    }

    pub fn is_degenerate(&self, n: usize, s: usize) -> bool {
        n > 0 && (0..n).any(|i| self.degen[n - 1][i][self.face[n][i][s]] == s)
    }

    pub fn is_empty(&self) -> bool {
        self.ids.iter().all(Vec::is_empty)
    }

    pub fn to_raw(&self) -> RawSSet {
        let wrap = |t: &Vec<Vec<Vec<usize>>>| {
            t.iter()
                .map(|l| l.iter().map(|m| m.iter().map(|&s| Some(s)).collect()).collect())
                .collect()
        };
        RawSSet {
            dim: self.dim,
            simplices: self.ids.clone(),
            faces: wrap(&self.face),
            degeneracies: wrap(&self.degen),
        }
    }

    fn from_tables(
        dim: usize,
        ids: Vec<Vec<String>>,
        face: Vec<Vec<Vec<usize>>>,
        degen: Vec<Vec<Vec<usize>>>,
    ) -> TruncatedSSet {
        let index = ids
            .iter()
            .map(|l| l.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect())
            .collect();
        TruncatedSSet { dim, ids, index, face, degen }
    }
}

fn sv(kind: SSetViolationKind, n: usize, i: usize, j: usize, simplex: &str, message: String) -> SSetViolation {
    SSetViolation { kind, n, i, j, simplex: simplex.to_string(), message }
}

/// Checks table shapes and every applicable instance of the simplicial
/// identities inside the truncation:
///
/// 1. `dᵢdⱼ = dⱼ₋₁dᵢ` for `i < j`
/// 2. `dᵢsⱼ = sⱼ₋₁dᵢ` for `i < j`
/// 3. `dⱼsⱼ = dⱼ₊₁sⱼ = 1`
/// 4. `dᵢsⱼ = sⱼdᵢ₋₁` for `i > j+1`
/// 5. `sᵢsⱼ = sⱼ₊₁sᵢ` for `i ≤ j`
///
/// Violations cite `(n, i, j, simplex)` with `n` the level of the simplex
/// the identity is applied to.
pub fn validate_sset(raw: &RawSSet) -> Result<TruncatedSSet, Vec<SSetViolation>> {
    use SSetViolationKind::*;
    let dim = raw.dim;
    let mut errs = Vec::new();
    if raw.simplices.len() != dim + 1 || raw.faces.len() != dim + 1 || raw.degeneracies.len() != dim + 1 {
        return Err(vec![sv(Shape, 0, 0, 0, "", format!("expected {} levels in every table", dim + 1))]);
    }
    for (n, level) in raw.simplices.iter().enumerate() {
        let mut seen = HashMap::new();
        for id in level {
            if seen.insert(id, ()).is_some() {
                errs.push(sv(DuplicateId, n, 0, 0, id, format!("duplicate {n}-simplex id {id:?}")));
            }
        }
    }
    let count = |n: usize| raw.simplices[n].len();
    let mut tables = |which: &str, t: &Vec<Vec<Vec<Option<usize>>>>, n: usize, maps: usize, target: usize| {
        let mut out = Vec::with_capacity(maps);
        if t[n].len() != maps {
            errs.push(sv(Shape, n, 0, 0, "", format!("level {n} needs {maps} {which} maps, got {}", t[n].len())));
            return out;
        }
        for (i, m) in t[n].iter().enumerate() {
            if m.len() != count(n) {
                errs.push(sv(Shape, n, i, 0, "", format!("{which} map ({n},{i}) has {} entries, expected {}", m.len(), count(n))));
                continue;
            }
            let mut col = Vec::with_capacity(m.len());
            for (s, e) in m.iter().enumerate() {
                let id = &raw.simplices[n][s];
                match e {
                    None => errs.push(sv(MissingEntry, n, i, 0, id, format!("{which} ({n},{i}) undefined on {id}"))),
                    Some(v) if *v >= target => {
                        errs.push(sv(OutOfRange, n, i, 0, id, format!("{which} ({n},{i}) of {id} out of range")))
                    }
                    Some(_) => {}
                }
                col.push(e.unwrap_or(0));
            }
            out.push(col);
        }
        out
    };
    let mut face = vec![Vec::new()];
    for n in 1..=dim {
        face.push(tables("face", &raw.faces, n, n + 1, count(n - 1)));
    }
    let mut degen = Vec::new();
    for n in 0..dim {
        degen.push(tables("degeneracy", &raw.degeneracies, n, n + 1, count(n + 1)));
    }
    degen.push(Vec::new());
    if !raw.faces[0].is_empty() || !raw.degeneracies[dim].is_empty() {
        errs.push(sv(Shape, 0, 0, 0, "", "faces on level 0 or degeneracies on the top level".into()));
    }
    if !errs.is_empty() {
        return Err(errs);
    }
    let x = TruncatedSSet::from_tables(dim, raw.simplices.clone(), face, degen);
    let d = |n: usize, i: usize, s: usize| x.face(n, i, s);
    let s_ = |n: usize, i: usize, s: usize| x.degeneracy(n, i, s);
    for n in 0..=dim {
        for z in 0..x.count(n) {
            let id = x.id(n, z);
            let mut bad = |k: u8, i: usize, j: usize| {
                errs.push(sv(
                    Identity(k),
                    n,
                    i,
                    j,
                    id,
                    format!("simplicial identity ({k}) fails at n={n}, i={i}, j={j} on {id}"),
                ))
            };
            // (1)
            if n >= 2 {
                for j in 1..=n {
                    for i in 0..j {
                        if d(n - 1, i, d(n, j, z)) != d(n - 1, j - 1, d(n, i, z)) {
                            bad(1, i, j);
                        }
                    }
                }
            }
            if n < dim {
                for j in 0..=n {
                    let sj = s_(n, j, z);
                    // (3)
                    if d(n + 1, j, sj) != z || d(n + 1, j + 1, sj) != z {
                        bad(3, j, j);
                    }
                    for i in 0..=n + 1 {
                        // (2)
                        if i < j && n >= 1 && d(n + 1, i, sj) != s_(n - 1, j - 1, d(n, i, z)) {
                            bad(2, i, j);
                        }
                        // (4)
                        if i > j + 1 && d(n + 1, i, sj) != s_(n - 1, j, d(n, i - 1, z)) {
                            bad(4, i, j);
                        }
                    }
                    // (5)
                    if n + 2 <= dim {
                        for i in 0..=j {
                            if s_(n + 1, i, sj) != s_(n + 1, j + 1, s_(n, i, z)) {
                                bad(5, i, j);
                            }
                        }
                    }
                }
            }
        }
    }
    if errs.is_empty() {
        Ok(x)
    } else {
        Err(errs)
    }
}

/// Builds a simplicial set from keyed simplices; faces and degeneracies are
/// computed on keys and looked up.
fn build<K, I, F, D>(levels: Vec<Vec<K>>, id: I, face: F, degen: D) -> TruncatedSSet
where
    K: Eq + Hash + Clone,
    I: Fn(usize, &K) -> String,
    F: Fn(usize, &K, usize) -> K,
    D: Fn(usize, &K, usize) -> K,
{
    let dim = levels.len() - 1;
    let index: Vec<HashMap<&K, usize>> = levels
        .iter()
        .map(|l| l.iter().enumerate().map(|(k, s)| (s, k)).collect())
        .collect();
    let ids = levels
        .iter()
        .enumerate()
        .map(|(n, l)| l.iter().map(|k| id(n, k)).collect())
        .collect();
    let mut faces = vec![Vec::new()];
    for n in 1..=dim {
        faces.push(
            (0..=n)
                .map(|i| levels[n].iter().map(|k| index[n - 1][&face(n, k, i)]).collect())
                .collect(),
        );
    }
    let mut degens: Vec<Vec<Vec<usize>>> = (0..dim)
        .map(|n| {
            (0..=n)
                .map(|i| levels[n].iter().map(|k| index[n + 1][&degen(n, k, i)]).collect())
                .collect()
        })
        .collect();
    degens.push(Vec::new());
    TruncatedSSet::from_tables(dim, ids, faces, degens)
}

/// Monotone sequences `a₀ ≤ … ≤ aₘ` in `0..=n`, lexicographic.
fn monotone(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m + 1);
    fn rec(m: usize, n: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m + 1 {
            out.push(cur.clone());
            return;
        }
        for a in lo..=n {
            cur.push(a);
            rec(m, n, a, cur, out);
            cur.pop();
        }
    }
    rec(m, n, 0, &mut cur, &mut out);
    out
}

fn seq_id(_: usize, s: &Vec<usize>) -> String {
    s.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn seq_face(_: usize, s: &Vec<usize>, i: usize) -> Vec<usize> {
    let mut t = s.clone();
    t.remove(i);
    t
}

fn seq_degen(_: usize, s: &Vec<usize>, i: usize) -> Vec<usize> {
    let mut t = s.clone();
    t.insert(i, s[i]);
    t
}

/// `Δⁿ` truncated at `dim`: m-simplices are monotone maps `[m] → [n]`, with
/// ids like `"0,1,1"`.
pub fn standard_simplex(n: usize, dim: usize) -> TruncatedSSet {
    let levels = (0..=dim).map(|m| monotone(m, n)).collect();
    build(levels, seq_id, seq_face, seq_degen)
}

/// The horn `Λⁿₖ ⊂ Δⁿ`: simplices whose image misses some `i ≠ k`.
pub fn horn(n: usize, k: usize, dim: usize) -> TruncatedSSet {
    assert!(k <= n, "horn index out of range");
    let keep = |s: &Vec<usize>| (0..=n).any(|i| i != k && !s.contains(&i));
    let levels = (0..=dim)
        .map(|m| monotone(m, n).into_iter().filter(|s| keep(s)).collect())
        .collect();
    build(levels, seq_id, seq_face, seq_degen)
}

/// Nerve truncated at `dim`. 0-simplices are objects; n-simplices are
/// composable paths `(f₁, …, fₙ)`, ids joining morphism names with `;`.
pub fn nerve(c: &FinCat, dim: usize) -> TruncatedSSet {
    let mut levels: Vec<Vec<Vec<usize>>> = vec![(0..c.object_count()).map(|x| vec![x]).collect()];
    if dim >= 1 {
        levels.push((0..c.morphism_count()).map(|f| vec![f]).collect());
    }
    for _ in 2..=dim {
        let prev = levels.last().unwrap();
        let mut next = Vec::new();
        for p in prev {
            let end = c.tgt(*p.last().unwrap());
            for f in 0..c.morphism_count() {
                if c.src(f) == end {
                    let mut q = p.clone();
                    q.push(f);
                    next.push(q);
                }
            }
        }
        next.sort();
        levels.push(next);
    }
    let id = |n: usize, k: &Vec<usize>| {
        if n == 0 {
            c.objects()[k[0]].clone()
        } else {
            k.iter().map(|&f| c.morphisms()[f].name.as_str()).collect::<Vec<_>>().join(";")
        }
    };
    let face = |n: usize, k: &Vec<usize>, i: usize| -> Vec<usize> {
        if n == 1 {
            return vec![if i == 0 { c.tgt(k[0]) } else { c.src(k[0]) }];
        }
        let mut t = k.clone();
        if i == 0 {
            t.remove(0);
        } else if i == n {
            t.pop();
        } else {
            let g = t.remove(i);
            t[i - 1] = c.compose(g, t[i - 1]).expect("composable path");
        }
        t
    };
    let degen = |n: usize, k: &Vec<usize>, i: usize| -> Vec<usize> {
        if n == 0 {
            return vec![c.identity(k[0])];
        }
        let vertex = if i == 0 { c.src(k[0]) } else { c.tgt(k[i - 1]) };
        let mut t = k.clone();
        t.insert(i, c.identity(vertex));
        t
    };
    build(levels, id, face, degen)
}

/// An inner horn `Λⁿₖ → X`: `faces[i]` is the image of the i-th face for
/// `i ≠ k`, `faces[k]` is `None`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HornInstance {
    pub n: usize,
    pub k: usize,
    pub faces: Vec<Option<usize>>,
}

impl HornInstance {
    fn key(&self) -> Vec<usize> {
        self.faces.iter().flatten().copied().collect()
    }
}

/// All compatible face tuples: `dᵢ(x_j) = dⱼ₋₁(x_i)` for `i < j`, both `≠ k`.
pub fn enumerate_inner_horns(x: &TruncatedSSet, n: usize, k: usize, exec: Exec) -> Vec<HornInstance> {
    assert!(0 < k && k < n && n <= x.dim(), "need 0 < k < n ≤ dim");
    let m = n - 1;
    let slots: Vec<usize> = (0..=n).filter(|&i| i != k).collect();
    // by_face[i][v] = (n-1)-simplices with dᵢ = v
    let by_face: Vec<HashMap<usize, Vec<usize>>> = (0..=m)
        .map(|i| {
            let mut h: HashMap<usize, Vec<usize>> = HashMap::new();
            if m >= 1 {
                for s in 0..x.count(m) {
                    h.entry(x.face(m, i, s)).or_default().push(s);
                }
            }
            h
        })
        .collect();
    let all: Vec<usize> = (0..x.count(m)).collect();
    let first = slots[0];
    let per_root = exec.map(&all, |&root| {
        let mut out = Vec::new();
        let mut chosen = vec![None; n + 1];
        chosen[first] = Some(root);
        extend(x, m, &slots, 1, &mut chosen, &by_face, &mut out);
        out
    });
    per_root
        .into_iter()
        .flatten()
        .map(|faces| HornInstance { n, k, faces })
        .collect()
}

fn extend(
    x: &TruncatedSSet,
    m: usize,
    slots: &[usize],
    pos: usize,
    chosen: &mut Vec<Option<usize>>,
    by_face: &[HashMap<usize, Vec<usize>>],
    out: &mut Vec<Vec<Option<usize>>>,
) {
    if pos == slots.len() {
        out.push(chosen.clone());
        return;
    }
    let j = slots[pos];
    // candidate x_j must satisfy dᵢ(x_j) = dⱼ₋₁(x_i) for every chosen i < j
    let prior = &slots[..pos];
    let empty = Vec::new();
    let cands: &[usize] = {
        let i = prior[0];
        let want = x.face(m, j - 1, chosen[i].unwrap());
        by_face[i].get(&want).unwrap_or(&empty)
    };
    for &c in cands {
        if prior.iter().all(|&i| x.face(m, i, c) == x.face(m, j - 1, chosen[i].unwrap())) {
            chosen[j] = Some(c);
            extend(x, m, slots, pos + 1, chosen, by_face, out);
            chosen[j] = None;
        }
    }
}

/// n-simplices `z` with `dᵢ(z) = faces[i]` for every `i ≠ k`.
pub fn fillers(x: &TruncatedSSet, h: &HornInstance) -> Vec<usize> {
    (0..x.count(h.n))
        .filter(|&z| (0..=h.n).all(|i| h.faces[i].map_or(true, |f| x.face(h.n, i, z) == f)))
        .collect()
}

/// Horn statistics for one `(n, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HornStats {
    pub n: usize,
    pub k: usize,
    pub horns: usize,
    pub unfilled: usize,
    pub multiply_filled: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FillerReport {
    /// Inner horns were examined for `2 ≤ n ≤ checked_up_to`.
    pub checked_up_to: usize,
    pub stats: Vec<HornStats>,
}

impl FillerReport {
    pub fn is_quasi_category(&self) -> bool {
        self.stats.iter().all(|s| s.unfilled == 0)
    }

    pub fn is_nerve_shaped(&self) -> bool {
        self.stats.iter().all(|s| s.unfilled == 0 && s.multiply_filled == 0)
    }
}

impl fmt::Display for FillerReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.stats {
            writeln!(
                f,
                "({}, {}): {} horns, {} unfilled, {} with several fillers",
                s.n, s.k, s.horns, s.unfilled, s.multiply_filled
            )?;
        }
        write!(
            f,
            "quasi-category: {}; nerve-shaped: {}; checked up to dim {}",
            self.is_quasi_category(),
            self.is_nerve_shaped(),
            self.checked_up_to
        )
    }
}

/// Counts fillers of every inner horn with `n ≤ dim`. Fillers are found by
/// hashing each n-simplex's horn boundary, so the cost is linear in the
/// number of horns and simplices.
pub fn filler_report(x: &TruncatedSSet, exec: Exec) -> FillerReport {
    let pairs: Vec<(usize, usize)> = (2..=x.dim()).flat_map(|n| (1..n).map(move |k| (n, k))).collect();
    let stats = exec.map(&pairs, |&(n, k)| {
        let mut filled: HashMap<Vec<usize>, usize> = HashMap::new();
        for z in 0..x.count(n) {
            let key: Vec<usize> = (0..=n).filter(|&i| i != k).map(|i| x.face(n, i, z)).collect();
            *filled.entry(key).or_default() += 1;
        }
        let horns = enumerate_inner_horns(x, n, k, Exec::Sequential);
        let mut st = HornStats { n, k, horns: horns.len(), unfilled: 0, multiply_filled: 0 };
        for h in &horns {
            match filled.get(&h.key()).copied().unwrap_or(0) {
                0 => st.unfilled += 1,
                1 => {}
                _ => st.multiply_filled += 1,
            }
        }
        st
    });
    FillerReport { checked_up_to: x.dim(), stats }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SSetError {
    #[error("truncation mismatch: {0} vs {1}")]
    TruncationMismatch(usize, usize),
    #[error("not nerve-shaped: horn ({n}, {k}) has {fillers} fillers")]
    NotNerveShaped { n: usize, k: usize, fillers: usize },
    #[error("need truncation at least 2, got {0}")]
    TooShallow(usize),
    #[error("reconstructed category is invalid: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    InvalidCategory(Vec<Violation>),
}

/// Objects are 0-simplices, morphisms 1-simplices with `src = d₁`,
/// `tgt = d₀`, identities `s₀`, and `g∘f = d₁` of the unique filler of the
/// (2,1)-horn `(g, _, f)`.
pub fn category_from_nerve(x: &TruncatedSSet, exec: Exec) -> Result<FinCat, SSetError> {
    if x.dim() < 2 {
        return Err(SSetError::TooShallow(x.dim()));
    }
    let report = filler_report(x, exec);
    if let Some(s) = report.stats.iter().find(|s| s.unfilled > 0 || s.multiply_filled > 0) {
        return Err(SSetError::NotNerveShaped { n: s.n, k: s.k, fillers: if s.unfilled > 0 { 0 } else { 2 } });
    }
    let objects = x.ids(0).to_vec();
    let morphisms = (0..x.count(1))
        .map(|f| Morphism { name: x.id(1, f).to_string(), src: x.face(1, 1, f), tgt: x.face(1, 0, f) })
        .collect();
    let identities = (0..x.count(0)).map(|o| Some(x.degeneracy(0, 0, o))).collect();
    let mut composition = Vec::new();
    for z in 0..x.count(2) {
        composition.push((x.face(2, 0, z), x.face(2, 2, z), x.face(2, 1, z)));
    }
    validate_category(&RawCategory { objects, morphisms, identities, composition })
        .map_err(SSetError::InvalidCategory)
}

/// Levelwise disjoint union. Ids get `inl.`/`inr.` prefixes only when some
/// level has a clash.
pub fn sset_coproduct(x: &TruncatedSSet, y: &TruncatedSSet) -> Result<TruncatedSSet, SSetError> {
    if x.dim() != y.dim() {
        return Err(SSetError::TruncationMismatch(x.dim(), y.dim()));
    }
    let clash = (0..=x.dim()).any(|n| y.ids(n).iter().any(|s| x.index_of(n, s).is_some()));
    let tag = |p: &str, s: &str| if clash { format!("{p}.{s}") } else { s.to_string() };
    let ids = (0..=x.dim())
        .map(|n| {
            x.ids(n).iter().map(|s| tag("inl", s)).chain(y.ids(n).iter().map(|s| tag("inr", s))).collect()
        })
        .collect();
    let join = |a: &Vec<Vec<Vec<usize>>>, b: &Vec<Vec<Vec<usize>>>, target: &dyn Fn(usize) -> usize| {
        a.iter()
            .zip(b)
            .enumerate()
            .map(|(n, (la, lb))| {
                la.iter()
                    .zip(lb)
                    .map(|(ma, mb)| ma.iter().copied().chain(mb.iter().map(|&s| s + target(n))).collect())
                    .collect()
            })
            .collect()
    };
    let face = join(&x.face, &y.face, &|n| x.count(n.saturating_sub(1)));
    let degen = join(&x.degen, &y.degen, &|n| x.count((n + 1).min(x.dim())));
    Ok(TruncatedSSet::from_tables(x.dim(), ids, face, degen))
}

/// Levelwise product with componentwise faces and degeneracies; the pair
/// `(a, b)` sits at `a * |Yₙ| + b` with id `"(a,b)"`.
pub fn sset_product(x: &TruncatedSSet, y: &TruncatedSSet) -> Result<TruncatedSSet, SSetError> {
    if x.dim() != y.dim() {
        return Err(SSetError::TruncationMismatch(x.dim(), y.dim()));
    }
    let dim = x.dim();
    let ids = (0..=dim)
        .map(|n| {
            x.ids(n)
                .iter()
                .flat_map(|a| y.ids(n).iter().map(move |b| format!("({a},{b})")))
                .collect()
        })
        .collect();
    let pair_map = |n: usize, tn: usize, fx: &dyn Fn(usize) -> usize, fy: &dyn Fn(usize) -> usize| -> Vec<usize> {
        let mut out = Vec::with_capacity(x.count(n) * y.count(n));
        for a in 0..x.count(n) {
            for b in 0..y.count(n) {
                out.push(fx(a) * y.count(tn) + fy(b));
            }
        }
        out
    };
    let mut face = vec![Vec::new()];
    for n in 1..=dim {
        face.push(
            (0..=n)
                .map(|i| pair_map(n, n - 1, &|a| x.face(n, i, a), &|b| y.face(n, i, b)))
                .collect(),
        );
    }
    let mut degen: Vec<Vec<Vec<usize>>> = (0..dim)
        .map(|n| {
            (0..=n)
                .map(|i| pair_map(n, n + 1, &|a| x.degeneracy(n, i, a), &|b| y.degeneracy(n, i, b)))
                .collect()
        })
        .collect();
    degen.push(Vec::new());
    Ok(TruncatedSSet::from_tables(dim, ids, face, degen))
}

/// The empty simplicial set truncated at `dim`.
pub fn empty_sset(dim: usize) -> TruncatedSSet {
    let mut degen = vec![Vec::new(); dim + 1];
    for (n, d) in degen.iter_mut().enumerate().take(dim) {
        *d = vec![Vec::new(); n + 1];
    }
    let face = (0..=dim).map(|n| if n == 0 { Vec::new() } else { vec![Vec::new(); n + 1] }).collect();
    TruncatedSSet::from_tables(dim, vec![Vec::new(); dim + 1], face, degen)
}

/// One simplex in every dimension.
pub fn point(dim: usize) -> TruncatedSSet {
    standard_simplex(0, dim)
}

/// Outcome of [`chi_sset`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SSetChi {
    Computed(EulerResult),
    /// No χ is assigned to this input; the string says why.
    Undefined(String),
}

fn constant(v: Rational) -> EulerResult {
    EulerResult { value: Some(v), witness_weighting: None, witness_coweighting: None }
}

/// χ on the fragment where it is determined: empty (0), the point (1), and
/// nerve-shaped inputs (χ of the reconstructed category). Anything else is
/// [`SSetChi::Undefined`].
pub fn chi_sset(x: &TruncatedSSet, exec: Exec) -> SSetChi {
    if x.is_empty() {
        return SSetChi::Computed(constant(Rational::zero()));
    }
    if x.counts().iter().all(|&c| c == 1) {
        return SSetChi::Computed(constant(Rational::one()));
    }
    match category_from_nerve(x, exec) {
        Ok(c) => SSetChi::Computed(euler_char(&c)),
        Err(e) => SSetChi::Undefined(format!("{e}; no Euler characteristic is assigned outside nerves")),
    }
}

/// Removes a nondegenerate n-simplex and every simplex above it having it
/// as an iterated face. Returns `None` when the simplex is degenerate.
pub fn delete_simplex(x: &TruncatedSSet, n: usize, s: usize) -> Option<TruncatedSSet> {
    if x.is_degenerate(n, s) {
        return None;
    }
    let mut dead: Vec<Vec<bool>> = (0..=x.dim()).map(|m| vec![false; x.count(m)]).collect();
    dead[n][s] = true;
    for m in n + 1..=x.dim() {
        for z in 0..x.count(m) {
            dead[m][z] = (0..=m).any(|i| dead[m - 1][x.face(m, i, z)]);
        }
    }
    let remap: Vec<Vec<usize>> = dead
        .iter()
        .map(|l| {
            let mut next = 0;
            l.iter()
                .map(|&d| {
                    let r = next;
                    if !d {
                        next += 1;
                    }
                    r
                })
                .collect()
        })
        .collect();
    let ids = (0..=x.dim())
        .map(|m| (0..x.count(m)).filter(|&z| !dead[m][z]).map(|z| x.id(m, z).to_string()).collect())
        .collect();
    let keep = |m: usize, t: &Vec<usize>, target: usize| -> Vec<usize> {
        (0..x.count(m)).filter(|&z| !dead[m][z]).map(|z| remap[target][t[z]]).collect()
    };
    let face = (0..=x.dim())
        .map(|m| x.face[m].iter().map(|t| keep(m, t, m - 1)).collect())
        .collect();
    let degen = (0..=x.dim())
        .map(|m| x.degen[m].iter().map(|t| keep(m, t, m + 1)).collect())
        .collect();
    Some(TruncatedSSet::from_tables(x.dim(), ids, face, degen))
}

/// Adds a copy `"<id>'"` of a top-dimensional nondegenerate simplex with the
/// same faces.
pub fn double_top_simplex(x: &TruncatedSSet, s: usize) -> TruncatedSSet {
    let n = x.dim();
    assert!(n >= 1 && !x.is_degenerate(n, s));
    let mut y = x.clone();
    y.ids[n].push(format!("{}'", x.id(n, s)));
    y.index[n].insert(format!("{}'", x.id(n, s)), x.count(n));
    for i in 0..=n {
        let v = y.face[n][i][s];
        y.face[n][i].push(v);
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::fincat::{categories_isomorphic, coproduct, product, SearchBudget};

    fn ex() -> Exec {
        Exec::default()
    }

    fn valid(x: &TruncatedSSet) {
        if let Err(e) = validate_sset(&x.to_raw()) {
            panic!("{:?}", &e[..e.len().min(5)]);
        }
    }

    #[test]
    fn standard_simplex_counts() {
        assert_eq!(standard_simplex(0, 2).counts(), vec![1, 1, 1]);
        assert_eq!(standard_simplex(1, 2).counts(), vec![2, 3, 4]);
        valid(&standard_simplex(2, 3));
        valid(&standard_simplex(3, 4));
    }

    #[test]
    fn face_one_skips_one() {
        let d = standard_simplex(2, 2);
        let top = d.index_of(1, "0,2").unwrap();
        let id = d.index_of(2, "0,1,2").unwrap();
        assert_eq!(d.face(2, 1, id), top);
    }

    #[test]
    fn horn_2_1() {
        let h = horn(2, 1, 2);
        assert_eq!(h.counts(), vec![3, 5, 7]);
        let nondeg: Vec<&str> = (0..h.count(1)).filter(|&e| !h.is_degenerate(1, e)).map(|e| h.id(1, e)).collect();
        assert_eq!(nondeg, vec!["0,1", "1,2"]);
        assert!(h.index_of(1, "0,2").is_none());
        valid(&h);
        let d = standard_simplex(2, 2);
        for n in 0..=2 {
            for s in h.ids(n) {
                assert!(d.index_of(n, s).is_some());
            }
        }
    }

    #[test]
    fn nerve_counts() {
        assert_eq!(nerve(&catalog::two_arrow(), 3).counts(), vec![2, 3, 4, 5]);
        assert_eq!(nerve(&catalog::discrete(3), 4).counts(), vec![3; 5]);
        assert_eq!(nerve(&catalog::cyclic_group(2), 2).counts(), vec![1, 2, 4]);
        valid(&nerve(&catalog::two_arrow(), 3));
        valid(&nerve(&catalog::three_object(), 4));
        valid(&nerve(&catalog::cyclic_group(3), 4));
    }

    #[test]
    fn corrupted_face_is_cited() {
        let x = nerve(&catalog::chain(3), 3);
        let mut raw = x.to_raw();
        let z = x.index_of(2, "p0≤p1;p1≤p2").unwrap();
        raw.faces[2][1][z] = Some(x.index_of(1, "p0≤p1").unwrap());
        let errs = validate_sset(&raw).unwrap_err();
        assert!(errs.iter().any(|e| e.kind == SSetViolationKind::Identity(1) && e.simplex.contains("p0≤p1;p1≤p2")));
    }

    #[test]
    fn inner_horns_of_nerves() {
        assert_eq!(enumerate_inner_horns(&nerve(&catalog::two_arrow(), 2), 2, 1, ex()).len(), 4);
        assert_eq!(enumerate_inner_horns(&nerve(&catalog::discrete(1), 2), 2, 1, ex()).len(), 1);
        let c = catalog::three_object();
        let pairs = (0..c.morphism_count())
            .flat_map(|f| (0..c.morphism_count()).map(move |g| (f, g)))
            .filter(|&(f, g)| c.tgt(f) == c.src(g))
            .count();
        let x = nerve(&c, 3);
        let horns = enumerate_inner_horns(&x, 2, 1, ex());
        assert_eq!(horns.len(), pairs);
        for h in &horns {
            assert_eq!(fillers(&x, h).len(), 1);
        }
        let r = filler_report(&nerve(&c, 4), ex());
        assert!(r.is_nerve_shaped());
        assert_eq!(r.checked_up_to, 4);
    }

    #[test]
    fn mutilated_and_doubled_fixtures() {
        let x = nerve(&catalog::chain(3), 3);
        let z = x.index_of(2, "p0≤p1;p1≤p2").unwrap();
        let cut = delete_simplex(&x, 2, z).unwrap();
        valid(&cut);
        let r = filler_report(&cut, ex());
        assert!(!r.is_quasi_category());
        let h = enumerate_inner_horns(&cut, 2, 1, ex());
        assert!(h.iter().any(|h| fillers(&cut, h).is_empty()));

        let x2 = nerve(&catalog::chain(3), 2);
        let z2 = x2.index_of(2, "p0≤p1;p1≤p2").unwrap();
        let dbl = double_top_simplex(&x2, z2);
        valid(&dbl);
        let r = filler_report(&dbl, ex());
        assert!(r.is_quasi_category() && !r.is_nerve_shaped());
        assert!(enumerate_inner_horns(&dbl, 2, 1, ex()).iter().any(|h| fillers(&dbl, h).len() == 2));
        assert!(matches!(category_from_nerve(&dbl, ex()), Err(SSetError::NotNerveShaped { .. })));
        assert!(delete_simplex(&x, 1, x.index_of(1, "1p0").unwrap()).is_none());
    }

    #[test]
    fn roundtrip() {
        let mut budget = SearchBudget::default();
        for c in [catalog::two_arrow(), catalog::three_object(), catalog::klein_four(), catalog::split_idempotent()] {
            let back = category_from_nerve(&nerve(&c, 3), ex()).unwrap();
            assert!(categories_isomorphic(&back, &c, &mut budget).unwrap().is_some());
        }
        let one = category_from_nerve(&nerve(&catalog::terminal(), 2), ex()).unwrap();
        assert_eq!((one.object_count(), one.morphism_count()), (1, 1));
    }

    #[test]
    fn coproduct_and_product_match_nerves() {
        let (c, d) = (catalog::two_arrow(), catalog::cyclic_group(2));
        let s = sset_coproduct(&nerve(&c, 3), &nerve(&d, 3)).unwrap();
        valid(&s);
        assert_eq!(s.counts(), nerve(&coproduct(&c, &d), 3).counts());
        let p = sset_product(&nerve(&c, 3), &nerve(&d, 3)).unwrap();
        valid(&p);
        assert_eq!(p.counts(), nerve(&product(&c, &d), 3).counts());
        let e = sset_coproduct(&nerve(&c, 3), &empty_sset(3)).unwrap();
        assert_eq!(e, nerve(&c, 3));
        assert_eq!(sset_product(&nerve(&c, 2), &nerve(&d, 3)), Err(SSetError::TruncationMismatch(2, 3)));
    }

    #[test]
    fn chi_sset_examples() {
        let v = |r: SSetChi| match r {
            SSetChi::Computed(e) => e.value,
            SSetChi::Undefined(s) => panic!("{s}"),
        };
        assert_eq!(v(chi_sset(&nerve(&catalog::two_arrow(), 3), ex())), Some(Rational::one()));
        assert_eq!(v(chi_sset(&empty_sset(3), ex())), Some(Rational::zero()));
        assert_eq!(v(chi_sset(&point(3), ex())), Some(Rational::one()));
        assert_eq!(v(chi_sset(&nerve(&catalog::cyclic_group(3), 3), ex())), Some(crate::q_canonical(1, 3).unwrap()));
        let x = nerve(&catalog::chain(3), 3);
        let cut = delete_simplex(&x, 2, x.index_of(2, "p0≤p1;p1≤p2").unwrap()).unwrap();
        assert!(matches!(chi_sset(&cut, ex()), SSetChi::Undefined(_)));
        assert!(matches!(chi_sset(&standard_simplex(1, 1), ex()), SSetChi::Undefined(_)));
    }
}
