//! JSON encodings of categories, bicategories, hom-data towers and
//! truncated simplicial sets. Unknown keys are rejected everywhere; names
//! are resolved to indices here and structural checks are left to the
//! validators.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fincat::{FinCat, Morphism, RawCategory};
use crate::higher::{AssociatorEntry, DatumError, EulerDatum, FinBicat, RawBicat, RawHComp, UnitorEntry};
use crate::simplicial::{RawSSet, TruncatedSSet};

#[derive(Debug, Error)]
pub enum FormatError {
    /// Malformed JSON or wrong shape; the message carries line and column.
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    /// A name that does not resolve. Reported as a structural problem.
    #[error("{0}")]
    Reference(String),
    #[error("{0}")]
    Datum(#[from] DatumError),
}

impl FormatError {
    /// True for problems with the described structure rather than the file.
    pub fn is_structural(&self) -> bool {
        !matches!(self, FormatError::Json(_))
    }
}

fn reference(msg: String) -> FormatError {
    FormatError::Reference(msg)
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismJson {
    name: String,
    src: String,
    tgt: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CompositeJson {
    first: String,
    then: String,
    equals: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CategoryJson {
    objects: Vec<String>,
    morphisms: Vec<MorphismJson>,
    identities: BTreeMap<String, String>,
    #[serde(default)]
    composition: Vec<CompositeJson>,
}

/// First index of each name; duplicates are left for the validator.
fn lookup(names: impl Iterator<Item = String>) -> HashMap<String, usize> {
    let mut m = HashMap::new();
    for (i, n) in names.enumerate() {
        m.entry(n).or_insert(i);
    }
    m
}

fn resolve(map: &HashMap<String, usize>, name: &str, what: &str) -> Result<usize, FormatError> {
    map.get(name).copied().ok_or_else(|| reference(format!("unknown {what} {name:?}")))
}

fn category_from_value(j: CategoryJson) -> Result<RawCategory, FormatError> {
    let obj = lookup(j.objects.iter().cloned());
    let mor = lookup(j.morphisms.iter().map(|m| m.name.clone()));
    let morphisms = j
        .morphisms
        .iter()
        .map(|m| {
            Ok(Morphism {
                name: m.name.clone(),
                src: resolve(&obj, &m.src, "object")?,
                tgt: resolve(&obj, &m.tgt, "object")?,
            })
        })
        .collect::<Result<Vec<_>, FormatError>>()?;
    for o in j.identities.keys() {
        resolve(&obj, o, "object")?;
    }
    let identities = j
        .objects
        .iter()
        .map(|o| j.identities.get(o).map(|m| resolve(&mor, m, "morphism")).transpose())
        .collect::<Result<Vec<_>, FormatError>>()?;
    let composition = j
        .composition
        .iter()
        .map(|c| {
            Ok((
                resolve(&mor, &c.then, "morphism")?,
                resolve(&mor, &c.first, "morphism")?,
                resolve(&mor, &c.equals, "morphism")?,
            ))
        })
        .collect::<Result<Vec<_>, FormatError>>()?;
    Ok(RawCategory { objects: j.objects, morphisms, identities, composition })
}

pub fn category_from_json(text: &str) -> Result<RawCategory, FormatError> {
    category_from_value(serde_json::from_str(text)?)
}

fn category_value(raw: &RawCategory) -> CategoryJson {
    let m = |i: usize| raw.morphisms[i].name.clone();
    CategoryJson {
        objects: raw.objects.clone(),
        morphisms: raw
            .morphisms
            .iter()
            .map(|f| MorphismJson { name: f.name.clone(), src: raw.objects[f.src].clone(), tgt: raw.objects[f.tgt].clone() })
            .collect(),
        identities: raw
            .objects
            .iter()
            .zip(&raw.identities)
            .filter_map(|(o, id)| id.map(|i| (o.clone(), m(i))))
            .collect(),
        composition: raw
            .composition
            .iter()
            .map(|&(g, f, h)| CompositeJson { first: m(f), then: m(g), equals: m(h) })
            .collect(),
    }
}

/// Composites with an identity are omitted.
pub fn category_to_json(c: &FinCat) -> String {
    serde_json::to_string_pretty(&category_value(&c.to_raw())).expect("serializable")
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HCompJson {
    #[serde(default)]
    one_cells: Vec<PairJson>,
    #[serde(default)]
    two_cells: Vec<PairJson>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairJson {
    g: String,
    f: String,
    equals: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AssociatorJson {
    cells: String,
    h: String,
    g: String,
    f: String,
    cell: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct UnitorJson {
    pair: String,
    f: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    left: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    right: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BicatJson {
    zero_cells: Vec<String>,
    #[serde(default)]
    hom: BTreeMap<String, CategoryJson>,
    #[serde(default)]
    hcomp: BTreeMap<String, HCompJson>,
    units: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    associators: Vec<AssociatorJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    unitors: Vec<UnitorJson>,
}

fn split_key<const K: usize>(key: &str, cells: &HashMap<String, usize>) -> Result<[usize; K], FormatError> {
    let parts: Vec<&str> = key.split('|').collect();
    if parts.len() != K {
        return Err(reference(format!("key {key:?} should name {K} 0-cells separated by '|'")));
    }
    let mut out = [0; K];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = resolve(cells, p, "0-cell")?;
    }
    Ok(out)
}

/// Missing hom entries are empty categories; missing coherence sections
/// default to identities (strict).
pub fn bicat_from_json(text: &str) -> Result<RawBicat, FormatError> {
    let j: BicatJson = serde_json::from_str(text)?;
    let n = j.zero_cells.len();
    let cells = lookup(j.zero_cells.iter().cloned());
    let mut homs = vec![RawCategory::default(); n * n];
    for (key, c) in j.hom {
        let [x, y] = split_key::<2>(&key, &cells)?;
        homs[x * n + y] = category_from_value(c)?;
    }
    let ob = |x: usize, y: usize| lookup(homs[x * n + y].objects.iter().cloned());
    let mo = |x: usize, y: usize| lookup(homs[x * n + y].morphisms.iter().map(|m| m.name.clone()));
    let mut hcomp = vec![RawHComp::default(); n * n * n];
    for (key, t) in &j.hcomp {
        let [x, y, z] = split_key::<3>(key, &cells)?;
        let entry = &mut hcomp[(x * n + y) * n + z];
        let (oxy, oyz, oxz) = (ob(x, y), ob(y, z), ob(x, z));
        for p in &t.one_cells {
            entry.one_cells.push((
                resolve(&oyz, &p.g, "1-cell")?,
                resolve(&oxy, &p.f, "1-cell")?,
                resolve(&oxz, &p.equals, "1-cell")?,
            ));
        }
        let (mxy, myz, mxz) = (mo(x, y), mo(y, z), mo(x, z));
        for p in &t.two_cells {
            entry.two_cells.push((
                resolve(&myz, &p.g, "2-cell")?,
                resolve(&mxy, &p.f, "2-cell")?,
                resolve(&mxz, &p.equals, "2-cell")?,
            ));
        }
    }
    for x in j.units.keys() {
        resolve(&cells, x, "0-cell")?;
    }
    let units = (0..n)
        .map(|x| j.units.get(&j.zero_cells[x]).map(|u| resolve(&ob(x, x), u, "1-cell")).transpose())
        .collect::<Result<Vec<_>, _>>()?;
    let mut associators = Vec::new();
    for a in &j.associators {
        let c = split_key::<4>(&a.cells, &cells)?;
        associators.push(AssociatorEntry {
            cells: c,
            h: resolve(&ob(c[2], c[3]), &a.h, "1-cell")?,
            g: resolve(&ob(c[1], c[2]), &a.g, "1-cell")?,
            f: resolve(&ob(c[0], c[1]), &a.f, "1-cell")?,
            two_cell: resolve(&mo(c[0], c[3]), &a.cell, "2-cell")?,
        });
    }
    let mut unitors = Vec::new();
    for u in &j.unitors {
        let [x, y] = split_key::<2>(&u.pair, &cells)?;
        let m = mo(x, y);
        unitors.push(UnitorEntry {
            x,
            y,
            f: resolve(&ob(x, y), &u.f, "1-cell")?,
            left: u.left.as_deref().map(|s| resolve(&m, s, "2-cell")).transpose()?,
            right: u.right.as_deref().map(|s| resolve(&m, s, "2-cell")).transpose()?,
        });
    }
    Ok(RawBicat { zero_cells: j.zero_cells, homs, hcomp, units, associators, unitors })
}

/// Writes every hom and composite; coherence cells only where they are not
/// identities.
pub fn bicat_to_json(b: &FinBicat) -> String {
    let raw = b.to_raw();
    let n = b.size();
    let names = &raw.zero_cells;
    let key = |xs: &[usize]| xs.iter().map(|&x| names[x].as_str()).collect::<Vec<_>>().join("|");
    let mut hom = BTreeMap::new();
    let mut hcomp = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            hom.insert(key(&[x, y]), category_value(&raw.homs[x * n + y]));
            for z in 0..n {
                let t = &raw.hcomp[(x * n + y) * n + z];
                if t.one_cells.is_empty() {
                    continue;
                }
                let (hxy, hyz, hxz) = (b.homcat(x, y), b.homcat(y, z), b.homcat(x, z));
                hcomp.insert(
                    key(&[x, y, z]),
                    HCompJson {
                        one_cells: t
                            .one_cells
                            .iter()
                            .map(|&(g, f, h)| PairJson {
                                g: hyz.objects()[g].clone(),
                                f: hxy.objects()[f].clone(),
                                equals: hxz.objects()[h].clone(),
                            })
                            .collect(),
                        two_cells: t
                            .two_cells
                            .iter()
                            .filter(|&&(g, f, _)| !(hyz.is_identity(g) && hxy.is_identity(f)))
                            .map(|&(g, f, h)| PairJson {
                                g: hyz.morphisms()[g].name.clone(),
                                f: hxy.morphisms()[f].name.clone(),
                                equals: hxz.morphisms()[h].name.clone(),
                            })
                            .collect(),
                    },
                );
            }
        }
    }
    let associators = raw
        .associators
        .iter()
        .filter(|a| !b.homcat(a.cells[0], a.cells[3]).is_identity(a.two_cell))
        .map(|a| {
            let [x, y, z, w] = a.cells;
            AssociatorJson {
                cells: key(&a.cells),
                h: b.homcat(z, w).objects()[a.h].clone(),
                g: b.homcat(y, z).objects()[a.g].clone(),
                f: b.homcat(x, y).objects()[a.f].clone(),
                cell: b.homcat(x, w).morphisms()[a.two_cell].name.clone(),
            }
        })
        .collect();
    let unitors = raw
        .unitors
        .iter()
        .filter_map(|u| {
            let h = b.homcat(u.x, u.y);
            let keep = |c: Option<usize>| c.filter(|&c| !h.is_identity(c)).map(|c| h.morphisms()[c].name.clone());
            let (left, right) = (keep(u.left), keep(u.right));
            (left.is_some() || right.is_some()).then(|| UnitorJson {
                pair: key(&[u.x, u.y]),
                f: h.objects()[u.f].clone(),
                left,
                right,
            })
        })
        .collect();
    let j = BicatJson {
        zero_cells: names.clone(),
        hom,
        hcomp,
        units: (0..n).map(|x| (names[x].clone(), b.homcat(x, x).objects()[b.unit(x)].clone())).collect(),
        associators,
        unitors,
    };
    serde_json::to_string_pretty(&j).expect("serializable")
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DatumJson {
    level: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cells: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    hom: Option<BTreeMap<String, DatumJson>>,
}

fn datum_from_value(j: DatumJson) -> Result<EulerDatum, FormatError> {
    if j.level == 0 {
        if j.cells.is_some() || j.hom.is_some() {
            return Err(reference("a level 0 datum has only a size".into()));
        }
        return j
            .size
            .map(EulerDatum::Set)
            .ok_or_else(|| reference("a level 0 datum needs a size".into()));
    }
    if j.size.is_some() {
        return Err(reference(format!("a level {} datum has no size", j.level)));
    }
    let cells = j.cells.unwrap_or_default();
    let n = cells.len();
    let index = lookup(cells.iter().cloned());
    let mut hom: Vec<Option<EulerDatum>> = vec![None; n * n];
    for (key, d) in j.hom.unwrap_or_default() {
        let [x, y] = split_key::<2>(&key, &index)?;
        hom[x * n + y] = Some(datum_from_value(d)?);
    }
    let hom = hom.into_iter().map(|d| d.unwrap_or_else(|| EulerDatum::empty(j.level - 1))).collect();
    Ok(EulerDatum::tower(j.level, cells, hom)?)
}

/// Missing hom entries are empty data of the level below.
pub fn datum_from_json(text: &str) -> Result<EulerDatum, FormatError> {
    datum_from_value(serde_json::from_str(text)?)
}

fn datum_value(d: &EulerDatum) -> DatumJson {
    match d {
        EulerDatum::Set(k) => DatumJson { level: 0, size: Some(*k), cells: None, hom: None },
        EulerDatum::Tower { level, cells, hom } => {
            let n = cells.len();
            DatumJson {
                level: *level,
                size: None,
                cells: Some(cells.clone()),
                hom: Some(
                    hom.iter()
                        .enumerate()
                        .map(|(k, h)| (format!("{}|{}", cells[k / n], cells[k % n]), datum_value(h)))
                        .collect(),
                ),
            }
        }
    }
}

pub fn datum_to_json(d: &EulerDatum) -> String {
    serde_json::to_string_pretty(&datum_value(d)).expect("serializable")
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SSetJson {
    dim: usize,
    simplices: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    faces: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default)]
    degeneracies: BTreeMap<String, BTreeMap<String, String>>,
}

fn level_key(key: &str) -> Result<(usize, usize), FormatError> {
    let bad = || reference(format!("map key {key:?} should look like \"n,i\""));
    let (a, b) = key.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

/// Missing map entries become `None` and are reported by the validator.
pub fn sset_from_json(text: &str) -> Result<RawSSet, FormatError> {
    let j: SSetJson = serde_json::from_str(text)?;
    let dim = j.dim;
    let mut simplices = vec![Vec::new(); dim + 1];
    for (k, ids) in j.simplices {
        let n: usize = k.parse().map_err(|_| reference(format!("level key {k:?} is not a number")))?;
        if n > dim {
            return Err(reference(format!("level {n} above dim {dim}")));
        }
        simplices[n] = ids;
    }
    let index: Vec<HashMap<String, usize>> = simplices.iter().map(|l| lookup(l.iter().cloned())).collect();
    let fill = |maps: BTreeMap<String, BTreeMap<String, String>>, up: bool| -> Result<Vec<Vec<Vec<Option<usize>>>>, FormatError> {
        let mut out: Vec<Vec<Vec<Option<usize>>>> = (0..=dim)
            .map(|n| {
                let present = if up { n < dim } else { n >= 1 };
                if present {
                    vec![vec![None; simplices[n].len()]; n + 1]
                } else {
                    Vec::new()
                }
            })
            .collect();
        for (key, m) in maps {
            let (n, i) = level_key(&key)?;
            let target = if up { n + 1 } else { n.wrapping_sub(1) };
            if n > dim || target > dim || i > n {
                return Err(reference(format!("map {key:?} is outside the truncation")));
            }
            for (s, t) in m {
                let si = resolve(&index[n], &s, &format!("{n}-simplex"))?;
                out[n][i][si] = Some(resolve(&index[target], &t, &format!("{target}-simplex"))?);
            }
        }
        Ok(out)
    };
    let faces = fill(j.faces, false)?;
    let degeneracies = fill(j.degeneracies, true)?;
    Ok(RawSSet { dim, simplices, faces, degeneracies })
}

pub fn sset_to_json(x: &TruncatedSSet) -> String {
    let dim = x.dim();
    let mut faces = BTreeMap::new();
    let mut degeneracies = BTreeMap::new();
    for n in 0..=dim {
        for i in 0..=n {
            if n >= 1 {
                faces.insert(
                    format!("{n},{i}"),
                    (0..x.count(n)).map(|s| (x.id(n, s).to_string(), x.id(n - 1, x.face(n, i, s)).to_string())).collect(),
                );
            }
            if n < dim {
                degeneracies.insert(
                    format!("{n},{i}"),
                    (0..x.count(n))
                        .map(|s| (x.id(n, s).to_string(), x.id(n + 1, x.degeneracy(n, i, s)).to_string()))
                        .collect(),
                );
            }
        }
    }
    let j = SSetJson {
        dim,
        simplices: (0..=dim).map(|n| (n.to_string(), x.ids(n).to_vec())).collect(),
        faces,
        degeneracies,
    };
    serde_json::to_string_pretty(&j).expect("serializable")
}
