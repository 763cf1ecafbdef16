//! Weightings, coweightings and the Euler characteristic of finite
//! categories.
//!
//! A weighting solves `M v = 𝟙` and a coweighting solves `uᵀ M = 𝟙ᵀ`, where
//! `M` is the hom-count matrix. When both exist their sums agree
//! (`Σv = uᵀMv = Σu`) and that common value is χ.

use std::fmt;

use thiserror::Error;

use crate::arith::{solve_affine, LinearSolution, QMatrix, Rational};
use crate::fincat::{iso_classes, Equivalence, FinCat};

/// Hom-count matrix under the category's stored object order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    pub ordering: Vec<usize>,
    pub matrix: QMatrix,
}

pub fn adjacency(c: &FinCat) -> AdjacencyMatrix {
    let n = c.object_count();
    let mut matrix = QMatrix::zeros(n, n);
    for x in 0..n {
        for y in 0..n {
            matrix.set(x, y, Rational::from(c.hom_count(x, y)));
        }
    }
    AdjacencyMatrix { ordering: (0..n).collect(), matrix }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Weighting,
    Coweighting,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Weighting => "weighting",
            Side::Coweighting => "coweighting",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weighting {
    pub values: Vec<Rational>,
    pub side: Side,
}

impl Weighting {
    pub fn sum(&self) -> Rational {
        self.values.iter().sum()
    }

    /// Whether `values` solves the (co)weighting equations for `matrix`.
    pub fn satisfies(&self, matrix: &QMatrix) -> bool {
        let m = match self.side {
            Side::Weighting => matrix.clone(),
            Side::Coweighting => matrix.transpose(),
        };
        match m.mul_vec(&self.values) {
            Ok(v) => v.iter().all(Rational::is_one),
            Err(_) => false,
        }
    }
}

/// Euler characteristic with its witnesses. `value` is present exactly when
/// both a weighting and a coweighting exist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerResult {
    pub value: Option<Rational>,
    pub witness_weighting: Option<Weighting>,
    pub witness_coweighting: Option<Weighting>,
}

impl EulerResult {
    pub fn exists(&self) -> bool {
        self.value.is_some()
    }
}

fn ones(n: usize) -> Vec<Rational> {
    vec![Rational::one(); n]
}

/// Full solution set of `M v = 𝟙`.
pub fn weighting_solutions(matrix: &QMatrix) -> LinearSolution {
    solve_affine(matrix, &ones(matrix.rows())).expect("square system")
}

/// Full solution set of `uᵀ M = 𝟙ᵀ`.
pub fn coweighting_solutions(matrix: &QMatrix) -> LinearSolution {
    weighting_solutions(&matrix.transpose())
}

pub fn matrix_weighting(matrix: &QMatrix) -> Option<Weighting> {
    weighting_solutions(matrix)
        .particular
        .map(|values| Weighting { values, side: Side::Weighting })
}

pub fn matrix_coweighting(matrix: &QMatrix) -> Option<Weighting> {
    coweighting_solutions(matrix)
        .particular
        .map(|values| Weighting { values, side: Side::Coweighting })
}

/// χ of any square rational "adjacency" matrix. The 0×0 matrix gives 0.
pub fn matrix_euler_char(matrix: &QMatrix) -> EulerResult {
    let w = matrix_weighting(matrix);
    let cw = matrix_coweighting(matrix);
    let value = match (&w, &cw) {
        (Some(w), Some(cw)) => {
            let s = w.sum();
            debug_assert_eq!(s, cw.sum());
            Some(s)
        }
        _ => None,
    };
    EulerResult { value, witness_weighting: w, witness_coweighting: cw }
}

pub fn weighting(c: &FinCat) -> Option<Weighting> {
    matrix_weighting(&adjacency(c).matrix)
}

pub fn coweighting(c: &FinCat) -> Option<Weighting> {
    matrix_coweighting(&adjacency(c).matrix)
}

pub fn euler_char(c: &FinCat) -> EulerResult {
    matrix_euler_char(&adjacency(c).matrix)
}

/// Replaces each value by the mean over its class: `αˣ = (Σ_{y~x} kʸ) / Cₓ`.
pub fn average_over_classes(values: &[Rational], class_of: &[usize]) -> Vec<Rational> {
    let classes = class_of.iter().copied().max().map_or(0, |m| m + 1);
    let mut sums = vec![Rational::zero(); classes];
    let mut sizes = vec![0usize; classes];
    for (v, &k) in values.iter().zip(class_of) {
        sums[k] = &sums[k] + v;
        sizes[k] += 1;
    }
    class_of
        .iter()
        .map(|&k| &sums[k] / &Rational::from(sizes[k]))
        .collect()
}

/// A weighting that is constant on each isomorphism class, if any weighting
/// exists.
pub fn constant_weighting(c: &FinCat) -> Option<Weighting> {
    let w = weighting(c)?;
    let part = iso_classes(c);
    Some(Weighting { values: average_over_classes(&w.values, &part.class_of), side: w.side })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransportError {
    #[error("weighting is not constant on isomorphism class {0}")]
    NotConstantOnClasses(usize),
    #[error("weighting has {got} entries, target category has {want} objects")]
    Length { got: usize, want: usize },
    #[error("expected a weighting, got a coweighting")]
    WrongSide,
    #[error("forward map is not a functor: {0}")]
    NotAFunctor(String),
}

/// Pulls a class-constant weighting `ℓ` on `b` back along an equivalence
/// `a ≃ b`: `kᵃ = (1/Cₐ) Σ_{b' ≅ F(a)} ℓ^{b'}`. The result sums to `Σℓ`.
pub fn transport_weighting(
    eq: &Equivalence,
    a: &FinCat,
    b: &FinCat,
    l: &Weighting,
) -> Result<Weighting, TransportError> {
    if l.side != Side::Weighting {
        return Err(TransportError::WrongSide);
    }
    if l.values.len() != b.object_count() {
        return Err(TransportError::Length { got: l.values.len(), want: b.object_count() });
    }
    eq.forward.check(a, b).map_err(TransportError::NotAFunctor)?;
    let pb = iso_classes(b);
    for class in 0..pb.class_count() {
        let members = pb.members(class);
        if members.iter().any(|&y| l.values[y] != l.values[members[0]]) {
            return Err(TransportError::NotConstantOnClasses(class));
        }
    }
    let class_sums: Vec<Rational> = (0..pb.class_count())
        .map(|k| pb.members(k).iter().map(|&y| &l.values[y]).sum())
        .collect();
    let pa = iso_classes(a);
    let values = (0..a.object_count())
        .map(|x| {
            let size = Rational::from(pa.class_size(pa.class_of[x]));
            let target_class = pb.class_of[eq.forward.object_map[x]];
            &class_sums[target_class] / &size
        })
        .collect();
    Ok(Weighting { values, side: Side::Weighting })
}
