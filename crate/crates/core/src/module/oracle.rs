//! Decides graded simplicity of a finite-dimensional graded module.
//!
//! `M` is graded-simple iff for every degree `d` with `M_d ≠ 0`:
//! `M_d` is simple over the algebra `B_d` of all degree-preserving words
//! restricted to `M_d`, and `M_d` generates `M`.

use std::collections::{BTreeMap, VecDeque};

use num_traits::{One, Zero};

use crate::linalg::{Echelon, Matrix, Q};

use super::{is_zero_vec, ModuleError, ModuleRep};

/// Largest dimension the oracle accepts.
pub const ORACLE_MAX_DIM: usize = 64;

struct Graded {
    dim: usize,
    /// Basis indices of each degree.
    parts: BTreeMap<i64, Vec<usize>>,
    /// Dense generator matrices.
    gens: Vec<Matrix>,
    /// Nonzero restrictions `M_j → M_{j + shift}` of each generator, keyed
    /// by `j`.
    blocks: Vec<(i64, BTreeMap<i64, Matrix>)>,
}

impl Graded {
    fn new(m: &ModuleRep) -> Self {
        let mut parts: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (i, &d) in m.degrees().iter().enumerate() {
            parts.entry(d).or_default().push(i);
        }
        let gens: Vec<Matrix> = m.actions().iter().map(|a| a.matrix.to_dense()).collect();
        let blocks = m
            .actions()
            .iter()
            .zip(&gens)
            .map(|(a, g)| {
                let shift = a.generator.degree();
                let restricted = parts
                    .iter()
                    .filter_map(|(&j, cols)| {
                        let rows = parts.get(&(j + shift))?;
                        let b = g.select(rows, cols);
                        (!b.is_zero()).then_some((j, b))
                    })
                    .collect();
                (shift, restricted)
            })
            .collect();
        Graded {
            dim: m.dim(),
            parts,
            gens,
            blocks,
        }
    }

    /// Basis of `B_d`, as `k × k` matrices with `k = dim M_d`.
    fn degree_algebra(&self, d: i64) -> Vec<Matrix> {
        let k = self.parts[&d].len();
        // reach[j] spans the operators M_d → M_j given by words.
        let mut reach: BTreeMap<i64, Echelon> = BTreeMap::new();
        let identity = Matrix::identity(k);
        reach.entry(d).or_default().insert(&identity.to_vec());
        let mut queue = VecDeque::from([(d, identity)]);
        while let Some((j, op)) = queue.pop_front() {
            for (shift, restricted) in &self.blocks {
                let Some(b) = restricted.get(&j) else {
                    continue;
                };
                let image = b.mul(&op);
                if reach.entry(j + shift).or_default().insert(&image.to_vec()) {
                    queue.push_back((j + shift, image));
                }
            }
        }
        reach[&d]
            .basis()
            .iter()
            .map(|v| Matrix::from_vec(k, k, v.clone()))
            .collect()
    }

    /// Whether the submodule generated by `M_d` is all of `M`.
    fn generates(&self, d: i64) -> bool {
        let n = self.dim;
        let mut span = Echelon::new();
        let mut queue = VecDeque::new();
        for &i in &self.parts[&d] {
            let mut v = vec![Q::zero(); n];
            v[i] = Q::one();
            span.insert(&v);
            queue.push_back(v);
        }
        while let Some(v) = queue.pop_front() {
            let col = Matrix::from_vec(n, 1, v);
            for g in &self.gens {
                let image = g.mul(&col).to_vec();
                if !is_zero_vec(&image) && span.insert(&image) {
                    queue.push_back(image);
                }
            }
        }
        span.rank() == n
    }
}

/// Commutant of a family of `k × k` matrices.
fn commutant(algebra: &[Matrix], k: usize) -> Vec<Matrix> {
    // X ↦ XT − TX is linear in the k² entries of X.
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for t in algebra {
        for r in 0..k {
            for c in 0..k {
                let mut row = vec![Q::zero(); k * k];
                for s in 0..k {
                    row[r * k + s] += &t[(s, c)];
                    row[s * k + c] -= &t[(r, s)];
                }
                rows.push(row);
            }
        }
    }
    Matrix::from_rows(rows)
        .nullspace()
        .into_iter()
        .map(|v| Matrix::from_vec(k, k, v))
        .collect()
}

/// Whether `M_d` is a simple `B_d`-module.
fn degree_is_simple(algebra: &[Matrix], k: usize, d: i64) -> Result<bool, ModuleError> {
    if algebra.len() == k * k {
        return Ok(true);
    }
    // A simple module has a division-algebra commutant, and a simple module
    // with scalar commutant is acted on by the full matrix algebra.
    let comm = commutant(algebra, k);
    if comm.len() == 1 {
        return Ok(false);
    }
    if comm.iter().any(|x| !x.is_zero() && x.rank() < k) {
        return Ok(false);
    }
    Err(ModuleError::Inconclusive { degree: d })
}

/// Whether every nonzero homogeneous vector generates the whole module.
pub fn graded_simplicity_oracle(m: &ModuleRep) -> Result<bool, ModuleError> {
    let n = m.dim();
    if n == 0 {
        return Err(ModuleError::Empty);
    }
    if n > ORACLE_MAX_DIM {
        return Err(ModuleError::TooLarge {
            dim: n,
            limit: ORACLE_MAX_DIM,
        });
    }
    if let Some(gen) = m.grading_violation() {
        return Err(ModuleError::NotGraded(format!("{gen:?}")));
    }
    let graded = Graded::new(m);
    for (&d, idx) in &graded.parts {
        let algebra = graded.degree_algebra(d);
        if !degree_is_simple(&algebra, idx.len(), d)? || !graded.generates(d) {
            return Ok(false);
        }
    }
    Ok(true)
}
