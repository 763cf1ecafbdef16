//! Finite bicategories and recursive hom-data towers.
//!
//! [`FinBicat`] carries the full structure (hom-categories, horizontal
//! composition, units, associators, unitors) and supports internal
//! equivalence. [`EulerDatum`] keeps only what χ needs: at level 0 a set
//! size, at level n a set of cells and a level n-1 datum for every ordered
//! pair. Coherence diagrams (pentagon, triangle) are not checked; endpoints
//! and invertibility of the coherence 2-cells are.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::arith::QMatrix;
use crate::exec::Exec;
use crate::fincat::{
    find_isomorphism, validate_category, BudgetExhausted, FinCat, Morphism,
    RawCategory, SearchBudget,
};
use crate::magnitude::{average_over_classes, euler_char, matrix_euler_char, EulerResult, Side, Weighting};

/// Horizontal composition `𝒜(y,z) × 𝒜(x,y) → 𝒜(x,z)` for one triple, as
/// listed `(g, f, g∘f)` / `(β, α, β∘ₕα)` entries.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawHComp {
    pub one_cells: Vec<(usize, usize, usize)>,
    pub two_cells: Vec<(usize, usize, usize)>,
}

/// Associator `A_{hgf}: (h∘g)∘f ⇒ h∘(g∘f)` for `f: x→y`, `g: y→z`, `h: z→w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociatorEntry {
    pub cells: [usize; 4],
    pub h: usize,
    pub g: usize,
    pub f: usize,
    pub two_cell: usize,
}

/// Unitors of a 1-cell `f: x → y`: `left: 1_y∘f ⇒ f`, `right: f∘1_x ⇒ f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitorEntry {
    pub x: usize,
    pub y: usize,
    pub f: usize,
    pub left: Option<usize>,
    pub right: Option<usize>,
}

/// Unvalidated bicategory. `homs` and `hcomp` are row-major over pairs and
/// triples of 0-cells. Missing coherence cells default to identities.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawBicat {
    pub zero_cells: Vec<String>,
    pub homs: Vec<RawCategory>,
    pub hcomp: Vec<RawHComp>,
    pub units: Vec<Option<usize>>,
    pub associators: Vec<AssociatorEntry>,
    pub unitors: Vec<UnitorEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BicatViolationKind {
    Shape,
    HomCategory,
    MissingUnit,
    MissingHComp,
    ConflictingHComp,
    HCompEndpoints,
    HCompIdentity,
    HCompInterchange,
    CoherenceEndpoints,
    CoherenceNotInvertible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BicatViolation {
    pub kind: BicatViolationKind,
    /// 0-cells involved.
    pub cells: Vec<usize>,
    pub message: String,
}

impl fmt::Display for BicatViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// Dense horizontal composition for one triple `(x, y, z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct HComp {
    // one[g * |ob 𝒜(x,y)| + f]
    one: Vec<usize>,
    // two[β * |mor 𝒜(x,y)| + α]
    two: Vec<usize>,
}

/// Validated finite bicategory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinBicat {
    zero_cells: Vec<String>,
    homs: Vec<FinCat>,
    hcomp: Vec<HComp>,
    units: Vec<usize>,
    associators: HashMap<([usize; 4], usize, usize, usize), usize>,
    left_unitors: Vec<Vec<usize>>,
    right_unitors: Vec<Vec<usize>>,
}

impl FinBicat {
    pub fn zero_cells(&self) -> &[String] {
        &self.zero_cells
    }

    pub fn size(&self) -> usize {
        self.zero_cells.len()
    }

    pub fn homcat(&self, x: usize, y: usize) -> &FinCat {
        &self.homs[x * self.size() + y]
    }

    pub fn unit(&self, x: usize) -> usize {
        self.units[x]
    }

    fn triple(&self, x: usize, y: usize, z: usize) -> &HComp {
        let n = self.size();
        &self.hcomp[(x * n + y) * n + z]
    }

    /// `g ∘ f` for 1-cells `f: x → y`, `g: y → z`.
    pub fn compose_one(&self, x: usize, y: usize, z: usize, g: usize, f: usize) -> usize {
        let width = self.homcat(x, y).object_count();
        self.triple(x, y, z).one[g * width + f]
    }

    /// `β ∘ₕ α` for 2-cells `α` in `𝒜(x,y)`, `β` in `𝒜(y,z)`.
    pub fn compose_two(&self, x: usize, y: usize, z: usize, beta: usize, alpha: usize) -> usize {
        let width = self.homcat(x, y).morphism_count();
        self.triple(x, y, z).two[beta * width + alpha]
    }

    /// Associator 2-cell in `𝒜(x,w)`.
    pub fn associator(&self, cells: [usize; 4], h: usize, g: usize, f: usize) -> usize {
        self.associators[&(cells, h, g, f)]
    }

    pub fn left_unitor(&self, x: usize, y: usize, f: usize) -> usize {
        self.left_unitors[x * self.size() + y][f]
    }

    pub fn right_unitor(&self, x: usize, y: usize, f: usize) -> usize {
        self.right_unitors[x * self.size() + y][f]
    }

    pub fn zero_cell_index(&self, name: &str) -> Option<usize> {
        self.zero_cells.iter().position(|c| c == name)
    }

    /// Back to raw form, listing every composite and coherence cell.
    pub fn to_raw(&self) -> RawBicat {
        let n = self.size();
        let mut hcomp = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (hxy, hyz) = (self.homcat(x, y), self.homcat(y, z));
                    let mut raw = RawHComp::default();
                    for g in 0..hyz.object_count() {
                        for f in 0..hxy.object_count() {
                            raw.one_cells.push((g, f, self.compose_one(x, y, z, g, f)));
                        }
                    }
                    for b in 0..hyz.morphism_count() {
                        for a in 0..hxy.morphism_count() {
                            raw.two_cells.push((b, a, self.compose_two(x, y, z, b, a)));
                        }
                    }
                    hcomp.push(raw);
                }
            }
        }
        let mut associators: Vec<AssociatorEntry> = self
            .associators
            .iter()
            .map(|(&(cells, h, g, f), &two_cell)| AssociatorEntry { cells, h, g, f, two_cell })
            .collect();
        associators.sort_by_key(|a| (a.cells, a.h, a.g, a.f));
        let mut unitors = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for f in 0..self.homcat(x, y).object_count() {
                    unitors.push(UnitorEntry {
                        x,
                        y,
                        f,
                        left: Some(self.left_unitor(x, y, f)),
                        right: Some(self.right_unitor(x, y, f)),
                    });
                }
            }
        }
        RawBicat {
            zero_cells: self.zero_cells.clone(),
            homs: self.homs.iter().map(FinCat::to_raw).collect(),
            hcomp,
            units: self.units.iter().map(|&u| Some(u)).collect(),
            associators,
            unitors,
        }
    }
}

fn bv(kind: BicatViolationKind, cells: Vec<usize>, message: String) -> BicatViolation {
    BicatViolation { kind, cells, message }
}

/// Checks hom-categories, functoriality of horizontal composition, and the
/// endpoints and invertibility of associators and unitors.
pub fn validate_bicat(raw: &RawBicat) -> Result<FinBicat, Vec<BicatViolation>> {
    use BicatViolationKind::*;
    let n = raw.zero_cells.len();
    let name = |x: usize| raw.zero_cells[x].as_str();
    let mut errs = Vec::new();
    if raw.homs.len() != n * n || raw.hcomp.len() != n * n * n || raw.units.len() != n {
        return Err(vec![bv(Shape, vec![], "hom, hcomp or unit tables have the wrong size".into())]);
    }

    let mut homs = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            match validate_category(&raw.homs[x * n + y]) {
                Ok(c) => homs.push(c),
                Err(vs) => {
                    for v in vs {
                        errs.push(bv(
                            HomCategory,
                            vec![x, y],
                            format!("hom-category ({}, {}): {}", name(x), name(y), v),
                        ));
                    }
                }
            }
        }
    }
    if !errs.is_empty() {
        return Err(errs);
    }
    let hom = |x: usize, y: usize| &homs[x * n + y];

    let mut units = Vec::with_capacity(n);
    for x in 0..n {
        match raw.units[x] {
            Some(u) if u < hom(x, x).object_count() => units.push(u),
            _ => errs.push(bv(MissingUnit, vec![x], format!("0-cell {} has no valid unit 1-cell", name(x)))),
        }
    }
    if !errs.is_empty() {
        return Err(errs);
    }

    // dense horizontal composition tables
    let mut hcomp = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (hxy, hyz, hxz) = (hom(x, y), hom(y, z), hom(x, z));
                let cells = vec![x, y, z];
                let entry = &raw.hcomp[(x * n + y) * n + z];
                let tag = format!("({}, {}, {})", name(x), name(y), name(z));

                let (fo, go) = (hxy.object_count(), hyz.object_count());
                let mut one: Vec<Option<usize>> = vec![None; go * fo];
                for &(g, f, h) in &entry.one_cells {
                    if g >= go || f >= fo || h >= hxz.object_count() {
                        errs.push(bv(MissingHComp, cells.clone(), format!("hcomp {tag}: 1-cell index out of range")));
                        continue;
                    }
                    match one[g * fo + f] {
                        Some(prev) if prev != h => errs.push(bv(
                            ConflictingHComp,
                            cells.clone(),
                            format!("hcomp {tag}: {} ∘ {} given twice", hyz.objects()[g], hxy.objects()[f]),
                        )),
                        _ => one[g * fo + f] = Some(h),
                    }
                }
                let (fm, gm) = (hxy.morphism_count(), hyz.morphism_count());
                let mut two: Vec<Option<usize>> = vec![None; gm * fm];
                for &(b, a, c) in &entry.two_cells {
                    if b >= gm || a >= fm || c >= hxz.morphism_count() {
                        errs.push(bv(MissingHComp, cells.clone(), format!("hcomp {tag}: 2-cell index out of range")));
                        continue;
                    }
                    match two[b * fm + a] {
                        Some(prev) if prev != c => errs.push(bv(
                            ConflictingHComp,
                            cells.clone(),
                            format!("hcomp {tag}: {} ∘ₕ {} given twice", hyz.morphisms()[b].name, hxy.morphisms()[a].name),
                        )),
                        _ => two[b * fm + a] = Some(c),
                    }
                }
                let mut missing = false;
                let one: Vec<usize> = one
                    .iter()
                    .enumerate()
                    .map(|(k, v)| {
                        v.unwrap_or_else(|| {
                            missing = true;
                            errs.push(bv(
                                MissingHComp,
                                cells.clone(),
                                format!(
                                    "hcomp {tag}: missing {} ∘ {}",
                                    hyz.objects()[k / fo.max(1)],
                                    hxy.objects()[k % fo.max(1)]
                                ),
                            ));
                            0
                        })
                    })
                    .collect();
                // identity pairs may be omitted: 1_g ∘ₕ 1_f = 1_{g∘f}
                for g in 0..go {
                    for f in 0..fo {
                        let k = hyz.identity(g) * fm + hxy.identity(f);
                        if two[k].is_none() && !missing {
                            two[k] = Some(hxz.identity(one[g * fo + f]));
                        }
                    }
                }
                let two: Vec<usize> = two
                    .iter()
                    .enumerate()
                    .map(|(k, v)| {
                        v.unwrap_or_else(|| {
                            errs.push(bv(
                                MissingHComp,
                                cells.clone(),
                                format!(
                                    "hcomp {tag}: missing {} ∘ₕ {}",
                                    hyz.morphisms()[k / fm.max(1)].name,
                                    hxy.morphisms()[k % fm.max(1)].name
                                ),
                            ));
                            0
                        })
                    })
                    .collect();
                hcomp.push(HComp { one, two });
            }
        }
    }
    if !errs.is_empty() {
        return Err(errs);
    }

    // functoriality of each horizontal composition
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (hxy, hyz, hxz) = (hom(x, y), hom(y, z), hom(x, z));
                let t = &hcomp[(x * n + y) * n + z];
                let (fo, fm) = (hxy.object_count(), hxy.morphism_count());
                let tag = format!("({}, {}, {})", name(x), name(y), name(z));
                let cells = vec![x, y, z];
                for b in 0..hyz.morphism_count() {
                    for a in 0..fm {
                        let c = t.two[b * fm + a];
                        let src = t.one[hyz.src(b) * fo + hxy.src(a)];
                        let tgt = t.one[hyz.tgt(b) * fo + hxy.tgt(a)];
                        if hxz.src(c) != src || hxz.tgt(c) != tgt {
                            errs.push(bv(
                                HCompEndpoints,
                                cells.clone(),
                                format!(
                                    "hcomp {tag}: {} ∘ₕ {} has the wrong endpoints",
                                    hyz.morphisms()[b].name,
                                    hxy.morphisms()[a].name
                                ),
                            ));
                        }
                    }
                }
                for g in 0..hyz.object_count() {
                    for f in 0..fo {
                        let c = t.two[hyz.identity(g) * fm + hxy.identity(f)];
                        if c != hxz.identity(t.one[g * fo + f]) {
                            errs.push(bv(
                                HCompIdentity,
                                cells.clone(),
                                format!(
                                    "hcomp {tag}: identity 2-cells of ({}, {}) not sent to an identity",
                                    hyz.objects()[g],
                                    hxy.objects()[f]
                                ),
                            ));
                        }
                    }
                }
                if errs.is_empty() {
                    // (β'∘β) ∘ₕ (α'∘α) = (β' ∘ₕ α') ∘ (β ∘ₕ α)
                    'outer: for b in 0..hyz.morphism_count() {
                        for b2 in (0..hyz.morphism_count()).filter(|&k| hyz.src(k) == hyz.tgt(b)) {
                            let bb = hyz.compose(b2, b).unwrap();
                            for a in 0..fm {
                                for a2 in (0..fm).filter(|&k| hxy.src(k) == hxy.tgt(a)) {
                                    let aa = hxy.compose(a2, a).unwrap();
                                    let lhs = t.two[bb * fm + aa];
                                    let rhs = hxz.compose(t.two[b2 * fm + a2], t.two[b * fm + a]);
                                    if rhs != Some(lhs) {
                                        errs.push(bv(
                                            HCompInterchange,
                                            cells.clone(),
                                            format!(
                                                "hcomp {tag} does not preserve vertical composition at ({}, {}) then ({}, {})",
                                                hyz.morphisms()[b].name,
                                                hxy.morphisms()[a].name,
                                                hyz.morphisms()[b2].name,
                                                hxy.morphisms()[a2].name
                                            ),
                                        ));
                                        break 'outer;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    if !errs.is_empty() {
        return Err(errs);
    }

    let partial = FinBicat {
        zero_cells: raw.zero_cells.clone(),
        homs,
        hcomp,
        units,
        associators: HashMap::new(),
        left_unitors: Vec::new(),
        right_unitors: Vec::new(),
    };
    let mut b = partial;

    // associators
    let mut given: HashMap<([usize; 4], usize, usize, usize), usize> = HashMap::new();
    for a in &raw.associators {
        given.insert((a.cells, a.h, a.g, a.f), a.two_cell);
    }
    let mut associators = HashMap::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for w in 0..n {
                    let cells = [x, y, z, w];
                    let hxw = b.homcat(x, w);
                    for f in 0..b.homcat(x, y).object_count() {
                        for g in 0..b.homcat(y, z).object_count() {
                            for h in 0..b.homcat(z, w).object_count() {
                                let hg = b.compose_one(y, z, w, h, g);
                                let left = b.compose_one(x, y, w, hg, f);
                                let gf = b.compose_one(x, y, z, g, f);
                                let right = b.compose_one(x, z, w, h, gf);
                                let cell = match given.get(&(cells, h, g, f)) {
                                    Some(&c) if c < hxw.morphism_count() => c,
                                    Some(_) => {
                                        errs.push(bv(
                                            CoherenceEndpoints,
                                            cells.to_vec(),
                                            "associator index out of range".into(),
                                        ));
                                        continue;
                                    }
                                    None => hxw.identity(left),
                                };
                                if hxw.src(cell) != left || hxw.tgt(cell) != right {
                                    errs.push(bv(
                                        CoherenceEndpoints,
                                        cells.to_vec(),
                                        format!(
                                            "associator of ({}, {}, {}) does not go (hg)f ⇒ h(gf)",
                                            b.homcat(z, w).objects()[h],
                                            b.homcat(y, z).objects()[g],
                                            b.homcat(x, y).objects()[f]
                                        ),
                                    ));
                                } else if !hxw.is_isomorphism(cell) {
                                    errs.push(bv(
                                        CoherenceNotInvertible,
                                        cells.to_vec(),
                                        format!(
                                            "associator of ({}, {}, {}) is not invertible",
                                            b.homcat(z, w).objects()[h],
                                            b.homcat(y, z).objects()[g],
                                            b.homcat(x, y).objects()[f]
                                        ),
                                    ));
                                }
                                associators.insert((cells, h, g, f), cell);
                            }
                        }
                    }
                }
            }
        }
    }

    // unitors
    let mut given_u: HashMap<(usize, usize, usize), (Option<usize>, Option<usize>)> = HashMap::new();
    for u in &raw.unitors {
        given_u.insert((u.x, u.y, u.f), (u.left, u.right));
    }
    let mut left_unitors = Vec::with_capacity(n * n);
    let mut right_unitors = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let hxy = b.homcat(x, y);
            let mut lefts = Vec::new();
            let mut rights = Vec::new();
            for f in 0..hxy.object_count() {
                let (gl, gr) = given_u.get(&(x, y, f)).copied().unwrap_or((None, None));
                let lsrc = b.compose_one(x, y, y, b.unit(y), f);
                let rsrc = b.compose_one(x, x, y, f, b.unit(x));
                for (which, given, src, out) in [
                    ("left", gl, lsrc, &mut lefts),
                    ("right", gr, rsrc, &mut rights),
                ] {
                    let cell = given.unwrap_or_else(|| hxy.identity(src));
                    if cell >= hxy.morphism_count() || hxy.src(cell) != src || hxy.tgt(cell) != f {
                        errs.push(bv(
                            CoherenceEndpoints,
                            vec![x, y],
                            format!("{which} unitor of {} has the wrong endpoints", hxy.objects()[f]),
                        ));
                        out.push(0);
                        continue;
                    }
                    if !hxy.is_isomorphism(cell) {
                        errs.push(bv(
                            CoherenceNotInvertible,
                            vec![x, y],
                            format!("{which} unitor of {} is not invertible", hxy.objects()[f]),
                        ));
                    }
                    out.push(cell);
                }
            }
            left_unitors.push(lefts);
            right_unitors.push(rights);
        }
    }
    if !errs.is_empty() {
        return Err(errs);
    }
    b.associators = associators;
    b.left_unitors = left_unitors;
    b.right_unitors = right_unitors;
    Ok(b)
}

/// Discrete hom-category on a set of 1-cell names, identity 2-cells named
/// `id(<cell>)`.
fn discrete_on(names: &[String]) -> RawCategory {
    RawCategory {
        objects: names.to_vec(),
        morphisms: names
            .iter()
            .enumerate()
            .map(|(i, n)| Morphism { name: format!("id({n})"), src: i, tgt: i })
            .collect(),
        identities: (0..names.len()).map(Some).collect(),
        composition: Vec::new(),
    }
}

/// Hom-category with exactly one 2-cell between any two 1-cells.
fn codiscrete_on(names: &[String]) -> (RawCategory, Vec<usize>) {
    let k = names.len();
    let mut morphisms = Vec::with_capacity(k * k);
    for a in 0..k {
        for b2 in 0..k {
            let name = if a == b2 { format!("id({})", names[a]) } else { format!("{}⇒{}", names[a], names[b2]) };
            morphisms.push(Morphism { name, src: a, tgt: b2 });
        }
    }
    let mut composition = Vec::new();
    for a in 0..k {
        for b2 in 0..k {
            for c in 0..k {
                composition.push((b2 * k + c, a * k + b2, a * k + c));
            }
        }
    }
    let cell_index = (0..k * k).collect();
    (
        RawCategory {
            objects: names.to_vec(),
            morphisms,
            identities: (0..k).map(|a| Some(a * k + a)).collect(),
            composition,
        },
        cell_index,
    )
}

fn hom_names(c: &FinCat, x: usize, y: usize) -> Vec<String> {
    c.hom(x, y).iter().map(|&f| c.morphisms()[f].name.clone()).collect()
}

/// A category as a strict bicategory with discrete hom-categories.
pub fn cat_as_bicat(c: &FinCat) -> FinBicat {
    locally(c, false)
}

/// A category as a strict bicategory whose hom-category `𝒜(x,y)` is the
/// codiscrete category on `Hom(x,y)`. Every 2-cell is invertible, so `x`
/// and `y` are internally equivalent whenever both `Hom(x,y)` and
/// `Hom(y,x)` are nonempty.
pub fn locally_chaotic(c: &FinCat) -> FinBicat {
    locally(c, true)
}

fn locally(c: &FinCat, chaotic: bool) -> FinBicat {
    let n = c.object_count();
    let mut homs = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let names = hom_names(c, x, y);
            homs.push(if chaotic { codiscrete_on(&names).0 } else { discrete_on(&names) });
        }
    }
    // position of each morphism inside its hom-set
    let mut pos = vec![0; c.morphism_count()];
    for x in 0..n {
        for y in 0..n {
            for (i, &f) in c.hom(x, y).iter().enumerate() {
                pos[f] = i;
            }
        }
    }
    let mut hcomp = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let mut raw = RawHComp::default();
                let (hxy, hyz) = (c.hom(x, y), c.hom(y, z));
                for (gi, &g) in hyz.iter().enumerate() {
                    for (fi, &f) in hxy.iter().enumerate() {
                        raw.one_cells.push((gi, fi, pos[c.compose(g, f).unwrap()]));
                    }
                }
                if chaotic {
                    let (kf, kg, kh) = (hxy.len(), hyz.len(), c.hom(x, z).len());
                    for g in 0..kg {
                        for g2 in 0..kg {
                            for f in 0..kf {
                                for f2 in 0..kf {
                                    let src = pos[c.compose(hyz[g], hxy[f]).unwrap()];
                                    let tgt = pos[c.compose(hyz[g2], hxy[f2]).unwrap()];
                                    raw.two_cells.push((g * kg + g2, f * kf + f2, src * kh + tgt));
                                }
                            }
                        }
                    }
                }
                hcomp.push(raw);
            }
        }
    }
    let raw = RawBicat {
        zero_cells: c.objects().to_vec(),
        homs,
        hcomp,
        units: (0..n).map(|x| Some(pos[c.identity(x)])).collect(),
        associators: Vec::new(),
        unitors: Vec::new(),
    };
    validate_bicat(&raw).expect("locally discrete/chaotic bicategory of a valid category")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HigherError {
    /// χ of some hom-datum does not exist. `path` lists the pairs of cells
    /// from the top level down to the offending hom.
    #[error("hom-EC undefined at depth {}, pair ({}, {})", .path.len(), .path.last().map_or("", |p| p.0.as_str()), .path.last().map_or("", |p| p.1.as_str()))]
    HomEcUndefined { path: Vec<(String, String)> },
}

impl HigherError {
    pub fn path_string(&self) -> String {
        match self {
            HigherError::HomEcUndefined { path } => path
                .iter()
                .map(|(a, b)| format!("{a}|{b}"))
                .collect::<Vec<_>>()
                .join(" / "),
        }
    }
}

/// Matrix of hom-category Euler characteristics.
pub fn bicat_adjacency(b: &FinBicat, exec: Exec) -> Result<QMatrix, HigherError> {
    let n = b.size();
    let chis = exec.map_range(n * n, |k| euler_char(&b.homs[k]).value);
    let mut m = QMatrix::zeros(n, n);
    for (k, chi) in chis.into_iter().enumerate() {
        let (x, y) = (k / n, k % n);
        match chi {
            Some(v) => m.set(x, y, v),
            None => {
                return Err(HigherError::HomEcUndefined {
                    path: vec![(b.zero_cells[x].clone(), b.zero_cells[y].clone())],
                })
            }
        }
    }
    Ok(m)
}

pub fn bicat_euler_char(b: &FinBicat, exec: Exec) -> Result<EulerResult, HigherError> {
    Ok(matrix_euler_char(&bicat_adjacency(b, exec)?))
}

/// Recursive hom-data: a finite set at level 0, or cells with a level
/// `n-1` datum for every ordered pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EulerDatum {
    Set(usize),
    Tower { level: usize, cells: Vec<String>, hom: Vec<EulerDatum> },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DatumError {
    #[error("level must be at least 1 for a datum with cells")]
    ZeroLevel,
    #[error("expected {want} hom entries, got {got}")]
    HomCount { want: usize, got: usize },
    #[error("hom datum for ({0}, {1}) has level {2}, expected {3}")]
    Level(String, String, usize, usize),
}

impl EulerDatum {
    /// Checked constructor for level ≥ 1. `hom` is row-major over pairs.
    pub fn tower(level: usize, cells: Vec<String>, hom: Vec<EulerDatum>) -> Result<Self, DatumError> {
        if level == 0 {
            return Err(DatumError::ZeroLevel);
        }
        let n = cells.len();
        if hom.len() != n * n {
            return Err(DatumError::HomCount { want: n * n, got: hom.len() });
        }
        for (k, h) in hom.iter().enumerate() {
            if h.level() != level - 1 {
                return Err(DatumError::Level(cells[k / n].clone(), cells[k % n].clone(), h.level(), level - 1));
            }
        }
        Ok(EulerDatum::Tower { level, cells, hom })
    }

    pub fn level(&self) -> usize {
        match self {
            EulerDatum::Set(_) => 0,
            EulerDatum::Tower { level, .. } => *level,
        }
    }

    /// Level-1 datum of a category: objects and hom-set sizes.
    pub fn from_category(c: &FinCat) -> EulerDatum {
        let n = c.object_count();
        let hom = (0..n * n).map(|k| EulerDatum::Set(c.hom_count(k / n, k % n))).collect();
        EulerDatum::Tower { level: 1, cells: c.objects().to_vec(), hom }
    }

    /// The empty datum of the given level (χ = 0 for level ≥ 1).
    pub fn empty(level: usize) -> EulerDatum {
        if level == 0 {
            EulerDatum::Set(0)
        } else {
            EulerDatum::Tower { level, cells: Vec::new(), hom: Vec::new() }
        }
    }
}

/// Forgets composition: level-2 datum whose hom at `(x, y)` is the level-1
/// datum of `𝒜(x,y)`.
pub fn bicat_to_datum(b: &FinBicat) -> EulerDatum {
    EulerDatum::Tower {
        level: 2,
        cells: b.zero_cells.clone(),
        hom: b.homs.iter().map(EulerDatum::from_category).collect(),
    }
}

/// χ at any level: the size at level 0, otherwise χ of the matrix of
/// recursively computed hom χ.
pub fn chi_n(e: &EulerDatum, exec: Exec) -> Result<EulerResult, HigherError> {
    match e {
        EulerDatum::Set(size) => Ok(EulerResult {
            value: Some(crate::arith::Rational::from(*size)),
            witness_weighting: None,
            witness_coweighting: None,
        }),
        EulerDatum::Tower { cells, hom, .. } => {
            let n = cells.len();
            let results = exec.map(hom, |h| chi_n(h, Exec::Sequential));
            let mut m = QMatrix::zeros(n, n);
            for (k, r) in results.into_iter().enumerate() {
                let pair = (cells[k / n].clone(), cells[k % n].clone());
                match r {
                    Ok(EulerResult { value: Some(v), .. }) => m.set(k / n, k % n, v),
                    Ok(_) => return Err(HigherError::HomEcUndefined { path: vec![pair] }),
                    Err(HigherError::HomEcUndefined { mut path }) => {
                        path.insert(0, pair);
                        return Err(HigherError::HomEcUndefined { path });
                    }
                }
            }
            Ok(matrix_euler_char(&m))
        }
    }
}

/// Partition of 0-cells into internal equivalence classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InternalEquivPartition {
    pub class_of: Vec<usize>,
    pub representatives: Vec<usize>,
}

impl InternalEquivPartition {
    pub fn class_count(&self) -> usize {
        self.representatives.len()
    }

    pub fn members(&self, class: usize) -> Vec<usize> {
        (0..self.class_of.len()).filter(|&x| self.class_of[x] == class).collect()
    }
}

/// Witness `(f, g, α, β)` that `x` and `y` are internally equivalent:
/// `α: g∘f ⇒ 1ₓ` and `β: f∘g ⇒ 1_y` invertible.
pub fn internal_equivalence(
    b: &FinBicat,
    x: usize,
    y: usize,
    budget: &mut SearchBudget,
) -> Result<Option<(usize, usize, usize, usize)>, BudgetExhausted> {
    let (hxx, hyy) = (b.homcat(x, x), b.homcat(y, y));
    for f in 0..b.homcat(x, y).object_count() {
        for g in 0..b.homcat(y, x).object_count() {
            budget.tick()?;
            let gf = b.compose_one(x, y, x, g, f);
            let fg = b.compose_one(y, x, y, f, g);
            let alpha = find_isomorphism(hxx, gf, b.unit(x));
            let beta = find_isomorphism(hyy, fg, b.unit(y));
            if let (Some((a, _)), Some((be, _))) = (alpha, beta) {
                return Ok(Some((f, g, a, be)));
            }
        }
    }
    Ok(None)
}

/// Brute force over 1-cell pairs for every pair of 0-cells. Class ids are
/// numbered by least member.
pub fn internal_equiv_classes(
    b: &FinBicat,
    budget: &mut SearchBudget,
) -> Result<InternalEquivPartition, BudgetExhausted> {
    let n = b.size();
    let mut class_of = Vec::with_capacity(n);
    let mut representatives: Vec<usize> = Vec::new();
    for x in 0..n {
        let mut found = None;
        for (k, &r) in representatives.iter().enumerate() {
            if internal_equivalence(b, x, r, budget)?.is_some() {
                found = Some(k);
                break;
            }
        }
        match found {
            Some(k) => class_of.push(k),
            None => {
                class_of.push(representatives.len());
                representatives.push(x);
            }
        }
    }
    Ok(InternalEquivPartition { class_of, representatives })
}

/// Averages a weighting of the bicategory adjacency matrix over internal
/// equivalence classes.
pub fn bicat_constant_weighting(
    b: &FinBicat,
    exec: Exec,
    budget: &mut SearchBudget,
) -> Result<Option<Weighting>, ConstantWeightingError> {
    let r = bicat_euler_char(b, exec)?;
    let Some(w) = r.witness_weighting else { return Ok(None) };
    let part = internal_equiv_classes(b, budget)?;
    Ok(Some(Weighting { values: average_over_classes(&w.values, &part.class_of), side: Side::Weighting }))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstantWeightingError {
    #[error(transparent)]
    Higher(#[from] HigherError),
    #[error(transparent)]
    Budget(#[from] BudgetExhausted),
}
