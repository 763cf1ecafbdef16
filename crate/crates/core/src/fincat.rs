//! Finite categories as explicit composition tables.
//!
//! A [`FinCat`] can only be obtained through [`validate_category`], so every
//! value in circulation satisfies the category axioms: total composition on
//! composable pairs, correct composite endpoints, identity laws and
//! associativity. Constructions (opposite, product, coproduct, skeleton) go
//! back through validation.

use std::collections::{HashMap, HashSet};
use std::fmt;

use thiserror::Error;

/// A morphism of a raw or validated category.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// Unvalidated category data. `composition` holds `(g, f, h)` with
/// `h = g ∘ f`; composites with an identity may be omitted.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<Morphism>,
    pub identities: Vec<Option<usize>>,
    pub composition: Vec<(usize, usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    DuplicateName,
    IndexOutOfRange,
    MissingIdentity,
    IdentityNotEndomorphism,
    NotComposable,
    ConflictingComposite,
    CompositeEndpoints,
    MissingComposite,
    LeftIdentityLaw,
    RightIdentityLaw,
    Associativity,
}

/// One failed axiom, citing the offending object/morphism indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub indices: Vec<usize>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// Validated finite category.
#[derive(Clone, PartialEq, Eq)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<usize>,
    // comp[g * m + f] = g ∘ f
    comp: Vec<Option<usize>>,
    homs: Vec<Vec<usize>>,
}

impl fmt::Debug for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FinCat({} objects, {} morphisms)",
            self.objects.len(),
            self.morphisms.len()
        )
    }
}

struct Names<'a>(&'a RawCategory);

impl Names<'_> {
    fn m(&self, i: usize) -> &str {
        self.0.morphisms.get(i).map_or("?", |m| m.name.as_str())
    }
    fn o(&self, i: usize) -> &str {
        self.0.objects.get(i).map_or("?", String::as_str)
    }
}

fn violation(kind: ViolationKind, indices: Vec<usize>, message: String) -> Violation {
    Violation { kind, indices, message }
}

/// Checks every category axiom and returns the validated category, or every
/// violation found. Nothing is repaired except that omitted composites with
/// an identity are inferred.
pub fn validate_category(raw: &RawCategory) -> Result<FinCat, Vec<Violation>> {
    use ViolationKind::*;
    let names = Names(raw);
    let n = raw.objects.len();
    let m = raw.morphisms.len();
    let mut errs = Vec::new();

    let mut seen = HashSet::new();
    for (i, o) in raw.objects.iter().enumerate() {
        if !seen.insert(o) {
            errs.push(violation(DuplicateName, vec![i], format!("duplicate object name {o:?}")));
        }
    }
    let mut seen = HashSet::new();
    for (i, mo) in raw.morphisms.iter().enumerate() {
        if !seen.insert(&mo.name) {
            errs.push(violation(
                DuplicateName,
                vec![i],
                format!("duplicate morphism name {:?}", mo.name),
            ));
        }
        if mo.src >= n || mo.tgt >= n {
            errs.push(violation(
                IndexOutOfRange,
                vec![i],
                format!("morphism {:?} has an endpoint out of range", mo.name),
            ));
        }
    }
    if raw.identities.len() != n {
        errs.push(violation(
            IndexOutOfRange,
            vec![],
            format!("{} identity entries for {} objects", raw.identities.len(), n),
        ));
    }
    for (x, id) in raw.identities.iter().enumerate().take(n) {
        match *id {
            None => errs.push(violation(
                MissingIdentity,
                vec![x],
                format!("object {:?} has no identity", names.o(x)),
            )),
            Some(i) if i >= m => errs.push(violation(
                IndexOutOfRange,
                vec![x],
                format!("identity of {:?} is out of range", names.o(x)),
            )),
            Some(i) => {
                let mo = &raw.morphisms[i];
                if mo.src != x || mo.tgt != x {
                    errs.push(violation(
                        IdentityNotEndomorphism,
                        vec![x, i],
                        format!("identity {:?} of {:?} is not an endomorphism of it", mo.name, names.o(x)),
                    ));
                }
            }
        }
    }
    if !errs.is_empty() {
        return Err(errs);
    }
    let identity: Vec<usize> = raw.identities.iter().map(|i| i.unwrap()).collect();
    let mor = &raw.morphisms;

    let mut comp: Vec<Option<usize>> = vec![None; m * m];
    for &(g, f, h) in &raw.composition {
        if g >= m || f >= m || h >= m {
            errs.push(violation(
                IndexOutOfRange,
                vec![g, f, h],
                "composition entry refers to an unknown morphism".into(),
            ));
            continue;
        }
        if mor[f].tgt != mor[g].src {
            errs.push(violation(
                NotComposable,
                vec![g, f],
                format!("{} ∘ {} given but the pair is not composable", names.m(g), names.m(f)),
            ));
            continue;
        }
        if f == identity[mor[f].src] && h != g {
            errs.push(violation(
                RightIdentityLaw,
                vec![g],
                format!("identity law fails at {}: {} ∘ {} = {}", names.m(g), names.m(g), names.m(f), names.m(h)),
            ));
            continue;
        }
        if g == identity[mor[g].src] && h != f {
            errs.push(violation(
                LeftIdentityLaw,
                vec![f],
                format!("identity law fails at {}: {} ∘ {} = {}", names.m(f), names.m(g), names.m(f), names.m(h)),
            ));
            continue;
        }
        if mor[h].src != mor[f].src || mor[h].tgt != mor[g].tgt {
            errs.push(violation(
                CompositeEndpoints,
                vec![g, f, h],
                format!(
                    "{} ∘ {} = {} has the wrong endpoints",
                    names.m(g),
                    names.m(f),
                    names.m(h)
                ),
            ));
        }
        match comp[g * m + f] {
            Some(prev) if prev != h => errs.push(violation(
                ConflictingComposite,
                vec![g, f],
                format!("{} ∘ {} given twice with different values", names.m(g), names.m(f)),
            )),
            _ => comp[g * m + f] = Some(h),
        }
    }

    for (f, mo) in mor.iter().enumerate() {
        let right = identity[mo.src];
        comp[f * m + right].get_or_insert(f);
        let left = identity[mo.tgt];
        comp[left * m + f].get_or_insert(f);
    }

    for g in 0..m {
        for f in 0..m {
            if mor[f].tgt == mor[g].src && comp[g * m + f].is_none() {
                errs.push(violation(
                    MissingComposite,
                    vec![g, f],
                    format!("missing composite {} ∘ {}", names.m(g), names.m(f)),
                ));
            }
        }
    }
    if !errs.is_empty() {
        return Err(errs);
    }

    for (f, mo) in mor.iter().enumerate() {
        if comp[f * m + identity[mo.src]] != Some(f) {
            errs.push(violation(
                RightIdentityLaw,
                vec![f],
                format!(
                    "identity law fails at {}: {} ∘ {} ≠ {}",
                    names.m(f),
                    names.m(f),
                    names.m(identity[mo.src]),
                    names.m(f)
                ),
            ));
        }
        if comp[identity[mo.tgt] * m + f] != Some(f) {
            errs.push(violation(
                LeftIdentityLaw,
                vec![f],
                format!(
                    "identity law fails at {}: {} ∘ {} ≠ {}",
                    names.m(f),
                    names.m(identity[mo.tgt]),
                    names.m(f),
                    names.m(f)
                ),
            ));
        }
    }

    let mut homs = vec![Vec::new(); n * n];
    for (i, mo) in mor.iter().enumerate() {
        homs[mo.src * n + mo.tgt].push(i);
    }
    // composable triples h ∘ g ∘ f, walked through the hom index
    for (f, fm) in mor.iter().enumerate() {
        for y in 0..n {
            for &g in &homs[fm.tgt * n + y] {
                let gf = comp[g * m + f].unwrap();
                for z in 0..n {
                    for &h in &homs[y * n + z] {
                        let hg = comp[h * m + g].unwrap();
                        let left = comp[h * m + gf].unwrap();
                        let right = comp[hg * m + f].unwrap();
                        if left != right {
                            errs.push(violation(
                                Associativity,
                                vec![h, g, f],
                                format!(
                                    "associativity fails at ({}, {}, {}): {} ≠ {}",
                                    names.m(h),
                                    names.m(g),
                                    names.m(f),
                                    names.m(left),
                                    names.m(right)
                                ),
                            ));
                        }
                    }
                }
            }
        }
    }
    if !errs.is_empty() {
        return Err(errs);
    }

    Ok(FinCat {
        objects: raw.objects.clone(),
        morphisms: raw.morphisms.clone(),
        identity,
        comp,
        homs,
    })
}

impl FinCat {
    /// The category with no objects.
    pub fn empty() -> FinCat {
        validate_category(&RawCategory::default()).expect("empty category is valid")
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identity[x]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identity[self.morphisms[f].src] == f
    }

    pub fn src(&self, f: usize) -> usize {
        self.morphisms[f].src
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.morphisms[f].tgt
    }

    /// `g ∘ f`, defined exactly when `tgt(f) = src(g)`.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.comp[g * self.morphisms.len() + f]
    }

    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        &self.homs[x * self.objects.len() + y]
    }

    pub fn hom_count(&self, x: usize, y: usize) -> usize {
        self.hom(x, y).len()
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_index(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    /// True when `f` has a two-sided inverse.
    pub fn is_isomorphism(&self, f: usize) -> bool {
        self.inverse(f).is_some()
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        let (x, y) = (self.src(f), self.tgt(f));
        self.hom(y, x).iter().copied().find(|&g| {
            self.compose(g, f) == Some(self.identity[x]) && self.compose(f, g) == Some(self.identity[y])
        })
    }

    /// Back to raw form. Composites with an identity are left implicit.
    pub fn to_raw(&self) -> RawCategory {
        let m = self.morphisms.len();
        let mut composition = Vec::new();
        for g in 0..m {
            if self.is_identity(g) {
                continue;
            }
            for f in 0..m {
                if self.is_identity(f) {
                    continue;
                }
                if let Some(h) = self.compose(g, f) {
                    composition.push((g, f, h));
                }
            }
        }
        RawCategory {
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
            identities: self.identity.iter().map(|&i| Some(i)).collect(),
            composition,
        }
    }

    /// Full subcategory on `objects` (in the given order), together with the
    /// index in `self` of each of its morphisms.
    pub fn full_subcategory(&self, objects: &[usize]) -> (FinCat, Vec<usize>) {
        let mut obj_pos = vec![None; self.objects.len()];
        for (i, &x) in objects.iter().enumerate() {
            obj_pos[x] = Some(i);
        }
        let mut embed = Vec::new();
        let mut mor_pos = vec![None; self.morphisms.len()];
        let mut morphisms = Vec::new();
        for &x in objects {
            for &y in objects {
                for &f in self.hom(x, y) {
                    mor_pos[f] = Some(morphisms.len());
                    embed.push(f);
                    morphisms.push(Morphism {
                        name: self.morphisms[f].name.clone(),
                        src: obj_pos[x].unwrap(),
                        tgt: obj_pos[y].unwrap(),
                    });
                }
            }
        }
        let mut composition = Vec::new();
        for (gi, &g) in embed.iter().enumerate() {
            for (fi, &f) in embed.iter().enumerate() {
                if let Some(h) = self.compose(g, f) {
                    composition.push((gi, fi, mor_pos[h].unwrap()));
                }
            }
        }
        let raw = RawCategory {
            objects: objects.iter().map(|&x| self.objects[x].clone()).collect(),
            morphisms,
            identities: objects.iter().map(|&x| mor_pos[self.identity[x]]).collect(),
            composition,
        };
        let sub = validate_category(&raw).expect("full subcategory of a valid category");
        (sub, embed)
    }
}

pub fn hom_count(c: &FinCat, x: usize, y: usize) -> usize {
    c.hom_count(x, y)
}

/// Reverses every morphism; `g ∘ᵒᵖ f = f ∘ g`.
pub fn opposite(c: &FinCat) -> FinCat {
    let m = c.morphism_count();
    let morphisms = c
        .morphisms
        .iter()
        .map(|mo| Morphism { name: mo.name.clone(), src: mo.tgt, tgt: mo.src })
        .collect();
    let mut composition = Vec::new();
    for g in 0..m {
        for f in 0..m {
            if let Some(h) = c.compose(f, g) {
                composition.push((g, f, h));
            }
        }
    }
    let raw = RawCategory {
        objects: c.objects.clone(),
        morphisms,
        identities: c.identity.iter().map(|&i| Some(i)).collect(),
        composition,
    };
    validate_category(&raw).expect("opposite of a valid category")
}

/// Product category. Object `(i, j)` sits at index `i * |ob D| + j` and
/// morphism `(f, g)` at `f * |mor D| + g`.
pub fn product(c: &FinCat, d: &FinCat) -> FinCat {
    let (cn, dn) = (c.object_count(), d.object_count());
    let (cm, dm) = (c.morphism_count(), d.morphism_count());
    let mut objects = Vec::with_capacity(cn * dn);
    for a in &c.objects {
        for b in &d.objects {
            objects.push(format!("({a},{b})"));
        }
    }
    let mut morphisms = Vec::with_capacity(cm * dm);
    for f in &c.morphisms {
        for g in &d.morphisms {
            morphisms.push(Morphism {
                name: format!("({},{})", f.name, g.name),
                src: f.src * dn + g.src,
                tgt: f.tgt * dn + g.tgt,
            });
        }
    }
    let mut identities = Vec::with_capacity(cn * dn);
    for x in 0..cn {
        for y in 0..dn {
            identities.push(Some(c.identity(x) * dm + d.identity(y)));
        }
    }
    let mut composition = Vec::new();
    for g1 in 0..cm {
        for f1 in 0..cm {
            let Some(h1) = c.compose(g1, f1) else { continue };
            for g2 in 0..dm {
                for f2 in 0..dm {
                    if let Some(h2) = d.compose(g2, f2) {
                        composition.push((g1 * dm + g2, f1 * dm + f2, h1 * dm + h2));
                    }
                }
            }
        }
    }
    let raw = RawCategory { objects, morphisms, identities, composition };
    validate_category(&raw).expect("product of valid categories")
}

/// Disjoint union. Names are kept unless the two sides share a name, in
/// which case every name is prefixed with `inl.` / `inr.`.
pub fn coproduct(c: &FinCat, d: &FinCat) -> FinCat {
    let mut names: HashSet<&str> = c.objects.iter().map(String::as_str).collect();
    names.extend(c.morphisms.iter().map(|m| m.name.as_str()));
    let clash = d.objects.iter().any(|o| names.contains(o.as_str()))
        || d.morphisms.iter().any(|m| names.contains(m.name.as_str()));
    let tag = |side: &str, s: &str| if clash { format!("{side}.{s}") } else { s.to_string() };

    let cn = c.object_count();
    let cm = c.morphism_count();
    let mut objects: Vec<String> = c.objects.iter().map(|o| tag("inl", o)).collect();
    objects.extend(d.objects.iter().map(|o| tag("inr", o)));
    let mut morphisms: Vec<Morphism> = c
        .morphisms
        .iter()
        .map(|mo| Morphism { name: tag("inl", &mo.name), src: mo.src, tgt: mo.tgt })
        .collect();
    morphisms.extend(d.morphisms.iter().map(|mo| Morphism {
        name: tag("inr", &mo.name),
        src: mo.src + cn,
        tgt: mo.tgt + cn,
    }));
    let mut identities: Vec<Option<usize>> = c.identity.iter().map(|&i| Some(i)).collect();
    identities.extend(d.identity.iter().map(|&i| Some(i + cm)));
    let mut composition = Vec::new();
    for g in 0..cm {
        for f in 0..cm {
            if let Some(h) = c.compose(g, f) {
                composition.push((g, f, h));
            }
        }
    }
    for g in 0..d.morphism_count() {
        for f in 0..d.morphism_count() {
            if let Some(h) = d.compose(g, f) {
                composition.push((g + cm, f + cm, h + cm));
            }
        }
    }
    let raw = RawCategory { objects, morphisms, identities, composition };
    validate_category(&raw).expect("coproduct of valid categories")
}

/// Partition of the objects into isomorphism classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoPartition {
    /// Class id per object. Ids are numbered by least member.
    pub class_of: Vec<usize>,
    /// Least object index in each class.
    pub representatives: Vec<usize>,
    /// For each object `x`, a pair `(u, v)` with `u: x → rep`, `v: rep → x`
    /// mutually inverse.
    pub to_representative: Vec<(usize, usize)>,
}

impl IsoPartition {
    pub fn class_count(&self) -> usize {
        self.representatives.len()
    }

    pub fn class_size(&self, class: usize) -> usize {
        self.class_of.iter().filter(|&&c| c == class).count()
    }

    pub fn members(&self, class: usize) -> Vec<usize> {
        (0..self.class_of.len()).filter(|&x| self.class_of[x] == class).collect()
    }
}

/// A mutually inverse pair `(u: x → y, v: y → x)`, if any exists.
pub fn find_isomorphism(c: &FinCat, x: usize, y: usize) -> Option<(usize, usize)> {
    for &u in c.hom(x, y) {
        for &v in c.hom(y, x) {
            if c.compose(v, u) == Some(c.identity(x)) && c.compose(u, v) == Some(c.identity(y)) {
                return Some((u, v));
            }
        }
    }
    None
}

pub fn iso_classes(c: &FinCat) -> IsoPartition {
    let n = c.object_count();
    let mut class_of = Vec::with_capacity(n);
    let mut representatives: Vec<usize> = Vec::new();
    let mut to_representative = Vec::with_capacity(n);
    for x in 0..n {
        let found = representatives
            .iter()
            .enumerate()
            .find_map(|(k, &r)| find_isomorphism(c, x, r).map(|pair| (k, pair)));
        match found {
            Some((k, pair)) => {
                class_of.push(k);
                to_representative.push(pair);
            }
            None => {
                class_of.push(representatives.len());
                representatives.push(x);
                let id = c.identity(x);
                to_representative.push((id, id));
            }
        }
    }
    IsoPartition { class_of, representatives, to_representative }
}

/// Full subcategory on the least-index member of each isomorphism class.
pub fn skeleton(c: &FinCat) -> FinCat {
    skeleton_with_embedding(c).0
}

fn skeleton_with_embedding(c: &FinCat) -> (FinCat, Vec<usize>, IsoPartition) {
    let part = iso_classes(c);
    let (sk, embed) = c.full_subcategory(&part.representatives);
    (sk, embed, part)
}

pub fn is_terminal(c: &FinCat, x: usize) -> bool {
    (0..c.object_count()).all(|w| c.hom_count(w, x) == 1)
}

pub fn is_initial(c: &FinCat, x: usize) -> bool {
    (0..c.object_count()).all(|w| c.hom_count(x, w) == 1)
}

/// Object and morphism maps of a functor between finite categories.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Functor {
    pub object_map: Vec<usize>,
    pub morphism_map: Vec<usize>,
}

impl Functor {
    pub fn identity(c: &FinCat) -> Functor {
        Functor {
            object_map: (0..c.object_count()).collect(),
            morphism_map: (0..c.morphism_count()).collect(),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Functor) -> Functor {
        Functor {
            object_map: self.object_map.iter().map(|&x| other.object_map[x]).collect(),
            morphism_map: self.morphism_map.iter().map(|&f| other.morphism_map[f]).collect(),
        }
    }

    /// Checks that this is a functor `c → d`: endpoints, identities and
    /// composites are preserved.
    pub fn check(&self, c: &FinCat, d: &FinCat) -> Result<(), String> {
        if self.object_map.len() != c.object_count() || self.morphism_map.len() != c.morphism_count() {
            return Err("map sizes do not match the source category".into());
        }
        if self.object_map.iter().any(|&y| y >= d.object_count())
            || self.morphism_map.iter().any(|&g| g >= d.morphism_count())
        {
            return Err("image index out of range".into());
        }
        for f in 0..c.morphism_count() {
            let g = self.morphism_map[f];
            if d.src(g) != self.object_map[c.src(f)] || d.tgt(g) != self.object_map[c.tgt(f)] {
                return Err(format!("endpoints of {} not preserved", c.morphisms[f].name));
            }
        }
        for x in 0..c.object_count() {
            if self.morphism_map[c.identity(x)] != d.identity(self.object_map[x]) {
                return Err(format!("identity of {} not preserved", c.objects[x]));
            }
        }
        let m = c.morphism_count();
        for g in 0..m {
            for f in 0..m {
                if let Some(h) = c.compose(g, f) {
                    let image = d.compose(self.morphism_map[g], self.morphism_map[f]);
                    if image != Some(self.morphism_map[h]) {
                        return Err(format!(
                            "composite {} ∘ {} not preserved",
                            c.morphisms[g].name, c.morphisms[f].name
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("search budget exhausted")]
pub struct BudgetExhausted;

/// Bounds the number of nodes a backtracking search may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    remaining: u64,
}

impl SearchBudget {
    pub fn new(nodes: u64) -> Self {
        SearchBudget { remaining: nodes }
    }

    pub fn remaining(&self) -> u64 {
        self.remaining
    }

    pub fn tick(&mut self) -> Result<(), BudgetExhausted> {
        if self.remaining == 0 {
            return Err(BudgetExhausted);
        }
        self.remaining -= 1;
        Ok(())
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::new(crate::DEFAULT_BUDGET)
    }
}

/// Per-object invariant preserved by any isomorphism of categories.
fn profile(c: &FinCat, x: usize) -> (usize, Vec<usize>, Vec<usize>) {
    let n = c.object_count();
    let mut out: Vec<usize> = (0..n).map(|y| c.hom_count(x, y)).collect();
    let mut inc: Vec<usize> = (0..n).map(|y| c.hom_count(y, x)).collect();
    out.sort_unstable();
    inc.sort_unstable();
    (c.hom_count(x, x), out, inc)
}

struct IsoSearch<'a> {
    c: &'a FinCat,
    d: &'a FinCat,
    budget: &'a mut SearchBudget,
    obj: Vec<Option<usize>>,
    obj_used: Vec<bool>,
    candidates: Vec<Vec<usize>>,
    mor_order: Vec<usize>,
    mor: Vec<Option<usize>>,
    mor_used: Vec<bool>,
    // pairs (g, f) with g ∘ f = h, indexed by h
    factorizations: Vec<Vec<(usize, usize)>>,
}

impl IsoSearch<'_> {
    fn objects(&mut self, i: usize) -> Result<bool, BudgetExhausted> {
        self.budget.tick()?;
        let n = self.c.object_count();
        if i == n {
            return self.start_morphisms();
        }
        for k in 0..self.candidates[i].len() {
            let y = self.candidates[i][k];
            if self.obj_used[y] {
                continue;
            }
            let consistent = (0..i).all(|j| {
                let yj = self.obj[j].unwrap();
                self.c.hom_count(i, j) == self.d.hom_count(y, yj)
                    && self.c.hom_count(j, i) == self.d.hom_count(yj, y)
            }) && self.c.hom_count(i, i) == self.d.hom_count(y, y);
            if !consistent {
                continue;
            }
            self.obj[i] = Some(y);
            self.obj_used[y] = true;
            if self.objects(i + 1)? {
                return Ok(true);
            }
            self.obj[i] = None;
            self.obj_used[y] = false;
        }
        Ok(false)
    }

    fn start_morphisms(&mut self) -> Result<bool, BudgetExhausted> {
        self.mor.iter_mut().for_each(|m| *m = None);
        self.mor_used.iter_mut().for_each(|u| *u = false);
        for x in 0..self.c.object_count() {
            let (a, b) = (self.c.identity(x), self.d.identity(self.obj[x].unwrap()));
            self.mor[a] = Some(b);
            self.mor_used[b] = true;
        }
        // identities are compatible with everything once objects match
        self.morphisms(0)
    }

    /// Every triple `h = g ∘ k` mentioning `f` whose other members are
    /// already mapped must be preserved.
    fn consistent(&self, f: usize, image: usize) -> bool {
        let (c, d) = (self.c, self.d);
        let img = |k: usize| if k == f { Some(image) } else { self.mor[k] };
        let n = c.object_count();
        for w in 0..n {
            for &a in c.hom(w, c.src(f)) {
                let fa = c.compose(f, a).unwrap();
                if let (Some(ia), Some(ifa)) = (img(a), img(fa)) {
                    if d.compose(image, ia) != Some(ifa) {
                        return false;
                    }
                }
            }
            for &a in c.hom(c.tgt(f), w) {
                let af = c.compose(a, f).unwrap();
                if let (Some(ia), Some(iaf)) = (img(a), img(af)) {
                    if d.compose(ia, image) != Some(iaf) {
                        return false;
                    }
                }
            }
        }
        self.factorizations[f].iter().all(|&(g, h)| match (img(g), img(h)) {
            (Some(ig), Some(ih)) => d.compose(ig, ih) == Some(image),
            _ => true,
        })
    }

    fn morphisms(&mut self, i: usize) -> Result<bool, BudgetExhausted> {
        self.budget.tick()?;
        if i == self.mor_order.len() {
            return Ok(true);
        }
        let f = self.mor_order[i];
        let (x, y) = (self.obj[self.c.src(f)].unwrap(), self.obj[self.c.tgt(f)].unwrap());
        let options: Vec<usize> = self.d.hom(x, y).to_vec();
        for g in options {
            if self.mor_used[g] || !self.consistent(f, g) {
                continue;
            }
            self.mor[f] = Some(g);
            self.mor_used[g] = true;
            if self.morphisms(i + 1)? {
                return Ok(true);
            }
            self.mor[f] = None;
            self.mor_used[g] = false;
        }
        Ok(false)
    }
}

/// Searches for an isomorphism of categories `c → d` by backtracking, first
/// over object bijections pruned by hom-count profiles, then over
/// hom-set bijections preserving composition.
pub fn categories_isomorphic(
    c: &FinCat,
    d: &FinCat,
    budget: &mut SearchBudget,
) -> Result<Option<Functor>, BudgetExhausted> {
    if c.object_count() != d.object_count() || c.morphism_count() != d.morphism_count() {
        return Ok(None);
    }
    let d_profiles: Vec<_> = (0..d.object_count()).map(|y| profile(d, y)).collect();
    let candidates: Vec<Vec<usize>> = (0..c.object_count())
        .map(|x| {
            let p = profile(c, x);
            (0..d.object_count()).filter(|&y| d_profiles[y] == p).collect()
        })
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    let m = c.morphism_count();
    let mut factorizations = vec![Vec::new(); m];
    for g in 0..m {
        for f in 0..m {
            if let Some(h) = c.compose(g, f) {
                if !c.is_identity(g) && !c.is_identity(f) {
                    factorizations[h].push((g, f));
                }
            }
        }
    }
    let mor_order: Vec<usize> = (0..m).filter(|&f| !c.is_identity(f)).collect();
    let mut search = IsoSearch {
        c,
        d,
        budget,
        obj: vec![None; c.object_count()],
        obj_used: vec![false; d.object_count()],
        candidates,
        mor_order,
        mor: vec![None; m],
        mor_used: vec![false; m],
        factorizations,
    };
    if search.objects(0)? {
        let functor = Functor {
            object_map: search.obj.iter().map(|x| x.unwrap()).collect(),
            morphism_map: search.mor.iter().map(|f| f.unwrap()).collect(),
        };
        debug_assert!(functor.check(c, d).is_ok());
        Ok(Some(functor))
    } else {
        Ok(None)
    }
}

/// A pair of functors `forward: C → D`, `backward: D → C` whose composites
/// are naturally isomorphic to the identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equivalence {
    pub forward: Functor,
    pub backward: Functor,
}

/// The functor `C → skeleton(C)` sending `f: x → y` to `u_y ∘ f ∘ v_x`,
/// where `u`, `v` are the chosen isomorphisms to and from representatives.
fn projection_to_skeleton(c: &FinCat, sk_embed: &[usize], part: &IsoPartition) -> Functor {
    let mut sk_index = HashMap::new();
    for (i, &f) in sk_embed.iter().enumerate() {
        sk_index.insert(f, i);
    }
    let morphism_map = (0..c.morphism_count())
        .map(|f| {
            let (x, y) = (c.src(f), c.tgt(f));
            let v_x = part.to_representative[x].1;
            let u_y = part.to_representative[y].0;
            let h = c.compose(f, v_x).and_then(|fv| c.compose(u_y, fv)).unwrap();
            sk_index[&h]
        })
        .collect();
    Functor { object_map: part.class_of.clone(), morphism_map }
}

fn inclusion(c_objects: &[usize], embed: &[usize]) -> Functor {
    Functor { object_map: c_objects.to_vec(), morphism_map: embed.to_vec() }
}

/// An explicit equivalence `c ≃ d`, obtained from an isomorphism of their
/// skeleta.
pub fn equivalence_witness(
    c: &FinCat,
    d: &FinCat,
    budget: &mut SearchBudget,
) -> Result<Option<Equivalence>, BudgetExhausted> {
    let (sc, ec, pc) = skeleton_with_embedding(c);
    let (sd, ed, pd) = skeleton_with_embedding(d);
    let Some(phi) = categories_isomorphic(&sc, &sd, budget)? else {
        return Ok(None);
    };
    let phi_inv = invert(&phi);
    let forward = projection_to_skeleton(c, &ec, &pc)
        .then(&phi)
        .then(&inclusion(&pd.representatives, &ed));
    let backward = projection_to_skeleton(d, &ed, &pd)
        .then(&phi_inv)
        .then(&inclusion(&pc.representatives, &ec));
    Ok(Some(Equivalence { forward, backward }))
}

fn invert(f: &Functor) -> Functor {
    let mut object_map = vec![0; f.object_map.len()];
    for (x, &y) in f.object_map.iter().enumerate() {
        object_map[y] = x;
    }
    let mut morphism_map = vec![0; f.morphism_map.len()];
    for (a, &b) in f.morphism_map.iter().enumerate() {
        morphism_map[b] = a;
    }
    Functor { object_map, morphism_map }
}

/// Decides `c ≃ d` via isomorphism of skeleta.
pub fn equivalent(c: &FinCat, d: &FinCat, budget: &mut SearchBudget) -> Result<bool, BudgetExhausted> {
    let (sc, sd) = (skeleton(c), skeleton(d));
    Ok(categories_isomorphic(&sc, &sd, budget)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn budget() -> SearchBudget {
        SearchBudget::default()
    }

    #[test]
    fn two_arrow_is_valid() {
        let c = catalog::two_arrow();
        assert_eq!(c.object_count(), 2);
        assert_eq!(c.morphism_count(), 3);
    }

    #[test]
    fn identity_law_violation_is_reported() {
        let mut raw = catalog::two_arrow().to_raw();
        let f = raw.morphisms.iter().position(|m| m.name == "f").unwrap();
        let idx = raw.identities[0].unwrap();
        // f ∘ 1x = 1x: wrong endpoints and a broken identity law
        raw.composition.push((f, idx, idx));
        let errs = validate_category(&raw).unwrap_err();
        assert_eq!(errs.len(), 1, "{errs:?}");
        assert_eq!(errs[0].kind, ViolationKind::RightIdentityLaw);
        assert_eq!(errs[0].indices, vec![f]);
    }

    #[test]
    fn identity_law_violation_with_good_endpoints() {
        // one object, morphisms {1, a}; declare a ∘ 1 = 1
        let raw = RawCategory {
            objects: vec!["*".into()],
            morphisms: vec![
                Morphism { name: "1".into(), src: 0, tgt: 0 },
                Morphism { name: "a".into(), src: 0, tgt: 0 },
            ],
            identities: vec![Some(0)],
            composition: vec![(1, 0, 0), (1, 1, 1)],
        };
        let errs = validate_category(&raw).unwrap_err();
        assert!(errs
            .iter()
            .any(|e| e.kind == ViolationKind::RightIdentityLaw && e.indices == vec![1]));
    }

    fn one_object(table: &[(usize, usize, usize)]) -> RawCategory {
        RawCategory {
            objects: vec!["*".into()],
            morphisms: ["1", "a", "b"]
                .iter()
                .map(|n| Morphism { name: n.to_string(), src: 0, tgt: 0 })
                .collect(),
            identities: vec![Some(0)],
            composition: table.to_vec(),
        }
    }

    #[test]
    fn missing_composite_is_cited() {
        let errs = validate_category(&one_object(&[(1, 1, 2), (1, 2, 1), (2, 1, 1)])).unwrap_err();
        assert_eq!(errs.len(), 1);
        assert_eq!(errs[0].kind, ViolationKind::MissingComposite);
        assert_eq!(errs[0].indices, vec![2, 2]);
    }

    #[test]
    fn associativity_failure_is_cited() {
        // aa = b, ab = a, ba = b, bb = a: (aa)a = b but a(aa) = a
        let raw = one_object(&[(1, 1, 2), (1, 2, 1), (2, 1, 2), (2, 2, 1)]);
        let errs = validate_category(&raw).unwrap_err();
        assert!(errs
            .iter()
            .all(|e| e.kind == ViolationKind::Associativity));
        assert!(errs.iter().any(|e| e.indices == vec![1, 1, 1]));
    }

    #[test]
    fn z3_is_valid_with_three_endomorphisms() {
        let z3 = catalog::cyclic_group(3);
        assert_eq!(z3.hom_count(0, 0), 3);
    }

    #[test]
    fn hom_counts_two_arrow() {
        let c = catalog::two_arrow();
        assert_eq!(c.hom_count(0, 1), 1);
        assert_eq!(c.hom_count(1, 0), 0);
        assert!(c.hom_count(0, 0) >= 1 && c.hom_count(1, 1) >= 1);
    }

    #[test]
    fn opposite_examples() {
        let c = catalog::two_arrow();
        let op = opposite(&c);
        let f = op.morphism_index("f").unwrap();
        assert_eq!((op.src(f), op.tgt(f)), (1, 0));
        assert_eq!(opposite(&op), c);
    }

    #[test]
    fn opposite_monoid_is_transposed_table() {
        let m = catalog::full_transformation_monoid(2);
        let op = opposite(&m);
        for g in 0..m.morphism_count() {
            for f in 0..m.morphism_count() {
                assert_eq!(op.compose(g, f), m.compose(f, g));
            }
        }
    }

    #[test]
    fn product_examples() {
        let one = catalog::terminal();
        let c = catalog::two_arrow();
        let p = product(&one, &c);
        assert_eq!((p.object_count(), p.morphism_count()), (2, 3));
        let pp = product(&c, &c);
        assert_eq!((pp.object_count(), pp.morphism_count()), (4, 9));
        let d = product(&catalog::discrete(2), &catalog::discrete(3));
        assert_eq!((d.object_count(), d.morphism_count()), (6, 6));
        assert!(categories_isomorphic(&d, &catalog::discrete(6), &mut budget())
            .unwrap()
            .is_some());
    }

    #[test]
    fn coproduct_examples() {
        let d = coproduct(&catalog::discrete(1), &catalog::discrete(1));
        assert!(categories_isomorphic(&d, &catalog::discrete(2), &mut budget())
            .unwrap()
            .is_some());
        let c = catalog::two_arrow();
        assert_eq!(coproduct(&c, &FinCat::empty()), c);
        let u = coproduct(&c, &catalog::cyclic_group(2));
        assert_eq!((u.object_count(), u.morphism_count()), (3, 5));
        assert_eq!(u.hom_count(0, 2), 0);
        assert_eq!(u.hom_count(2, 1), 0);
    }

    #[test]
    fn iso_classes_examples() {
        let sk = catalog::skeleta_example();
        let p = iso_classes(&sk);
        assert_eq!(p.class_of, vec![0, 0, 1]);
        assert_eq!(p.representatives, vec![0, 2]);
        assert_eq!(iso_classes(&catalog::discrete(4)).class_count(), 4);
        assert_eq!(iso_classes(&catalog::cyclic_group(2)).class_count(), 1);
    }

    #[test]
    fn skeleton_examples() {
        let sk = skeleton(&catalog::skeleta_example());
        assert_eq!(sk.objects(), &["x".to_string(), "z".to_string()]);
        assert_eq!(sk.morphism_count(), 3);
        assert_eq!(sk.hom_count(0, 1), 1);
        assert_eq!(skeleton(&catalog::discrete(3)), catalog::discrete(3));
        assert_eq!(skeleton(&sk), sk);
    }

    #[test]
    fn terminal_and_initial() {
        let c = catalog::two_arrow();
        assert!(is_terminal(&c, 1) && !is_terminal(&c, 0));
        assert!(is_initial(&c, 0) && !is_initial(&c, 1));
        let t = catalog::three_object();
        assert!(is_terminal(&t, 2));
        assert!(is_initial(&t, 0) && is_initial(&t, 1));
        let d = catalog::discrete(2);
        assert!((0..2).all(|x| !is_terminal(&d, x) && !is_initial(&d, x)));
    }

    #[test]
    fn isomorphism_examples() {
        let a = catalog::skeleta_example();
        let (s1, _) = a.full_subcategory(&[0, 2]);
        let (s2, _) = a.full_subcategory(&[1, 2]);
        let w = categories_isomorphic(&s1, &s2, &mut budget()).unwrap().unwrap();
        assert!(w.check(&s1, &s2).is_ok());
        assert!(categories_isomorphic(&catalog::discrete(2), &catalog::cyclic_group(2), &mut budget())
            .unwrap()
            .is_none());
    }

    #[test]
    fn two_arrow_is_isomorphic_to_its_opposite() {
        let c = catalog::two_arrow();
        let op = opposite(&c);
        // brute force over both object bijections; identities and f are forced
        let ok: Vec<[usize; 2]> = [[0usize, 1], [1, 0]]
            .into_iter()
            .filter(|perm| (0..2).all(|x| (0..2).all(|y| c.hom_count(x, y) == op.hom_count(perm[x], perm[y]))))
            .collect();
        assert_eq!(ok, vec![[1, 0]]);
        let w = categories_isomorphic(&c, &op, &mut budget()).unwrap().unwrap();
        assert_eq!(w.object_map, vec![1, 0]);
        w.check(&c, &op).unwrap();
    }

    #[test]
    fn equivalence_examples() {
        let a = catalog::skeleta_example();
        assert!(equivalent(&a, &skeleton(&a), &mut budget()).unwrap());
        assert!(!equivalent(&catalog::discrete(2), &catalog::discrete(3), &mut budget()).unwrap());
        let c = catalog::two_arrow();
        assert!(equivalent(&product(&catalog::terminal(), &c), &c, &mut budget()).unwrap());
    }

    #[test]
    fn equivalence_witness_is_functorial() {
        let a = catalog::skeleta_example();
        let s = skeleton(&a);
        let eq = equivalence_witness(&a, &s, &mut budget()).unwrap().unwrap();
        eq.forward.check(&a, &s).unwrap();
        eq.backward.check(&s, &a).unwrap();
    }

    #[test]
    fn budget_is_enforced() {
        let c = catalog::codiscrete(4);
        let mut b = SearchBudget::new(3);
        assert_eq!(categories_isomorphic(&c, &c, &mut b), Err(BudgetExhausted));
    }

    #[test]
    fn empty_category_is_valid() {
        let e = FinCat::empty();
        assert_eq!(e.object_count(), 0);
        assert!(equivalent(&e, &e, &mut budget()).unwrap());
    }
}
