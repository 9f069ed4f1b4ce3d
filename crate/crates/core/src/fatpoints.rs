//! Linear systems of degree-`d` hypersurfaces in `Pⁿ` with assigned multiple points.
//!
//! A point of multiplicity `m` imposes the vanishing of every partial
//! derivative of order `m − 1`; by Euler's relation this also kills the
//! lower-order derivatives of a homogeneous form, so each point contributes
//! `C(m−1+n, n)` rows.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, structural, Result};
use crate::field::PrimeField;
use crate::linalg::{self, kernel_basis, DenseMatrix};
use crate::poly::{binomial, monomial_count, DegreeSlice, LinearForm, MonomialBasis};
use crate::random::{nonzero_vector, rng_for, Stream};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    coordinates: Vec<u32>,
}

impl ProjectivePoint {
    pub fn new(coordinates: Vec<u32>) -> Result<Self> {
        if coordinates.is_empty() || coordinates.iter().all(|&c| c == 0) {
            return Err(domain("a projective point needs a nonzero coordinate vector"));
        }
        Ok(ProjectivePoint { coordinates })
    }

    pub fn coordinates(&self) -> &[u32] {
        &self.coordinates
    }

    /// Projective dimension of the ambient space.
    pub fn ambient_dim(&self) -> usize {
        self.coordinates.len() - 1
    }

    pub fn scaled(&self, c: u32, field: &PrimeField) -> Result<Self> {
        Self::new(self.coordinates.iter().map(|&x| field.mul(x, c)).collect())
    }
}

/// The points `L^∨` whose coordinates are the coefficients of the forms.
pub fn dual_points(forms: &[LinearForm]) -> Result<Vec<ProjectivePoint>> {
    forms.iter().map(|l| ProjectivePoint::new(l.coefficients().to_vec())).collect()
}

/// `count` random points of `Pⁿ` drawn from `seed`.
pub fn random_points(n: usize, count: usize, seed: u64, field: &PrimeField) -> Vec<ProjectivePoint> {
    let mut rng = rng_for(seed, Stream::Points);
    (0..count).map(|_| ProjectivePoint { coordinates: nonzero_vector(&mut rng, n + 1, field) }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FatPointSystem {
    n: usize,
    d: usize,
    assignments: Vec<(ProjectivePoint, u32)>,
    field: PrimeField,
}

impl FatPointSystem {
    pub fn new(n: usize, d: usize, assignments: Vec<(ProjectivePoint, u32)>, field: PrimeField) -> Result<Self> {
        if n == 0 {
            return Err(domain("projective dimension must be at least 1"));
        }
        for (p, m) in &assignments {
            if p.coordinates.len() != n + 1 {
                return Err(structural(format!("point with {} coordinates in P^{n}", p.coordinates.len())));
            }
            if *m == 0 {
                return Err(domain("multiplicities must be at least 1"));
            }
            if p.coordinates.iter().any(|&c| c >= field.modulus()) {
                return Err(structural("point coordinate is not a canonical residue"));
            }
        }
        Ok(FatPointSystem { n, d, assignments, field })
    }

    /// Every point gets multiplicity `m`.
    pub fn uniform(n: usize, d: usize, points: &[ProjectivePoint], m: u32, field: PrimeField) -> Result<Self> {
        Self::new(n, d, points.iter().map(|p| (p.clone(), m)).collect(), field)
    }

    pub fn projective_dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn assignments(&self) -> &[(ProjectivePoint, u32)] {
        &self.assignments
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn multiplicities(&self) -> Vec<u32> {
        self.assignments.iter().map(|a| a.1).collect()
    }

    pub fn with_point(&self, point: ProjectivePoint, m: u32) -> Result<Self> {
        let mut a = self.assignments.clone();
        a.push((point, m));
        Self::new(self.n, self.d, a, self.field)
    }

    pub fn with_degree(&self, d: usize) -> Self {
        FatPointSystem { d, ..self.clone() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectedDimension {
    /// `max(0, raw)`.
    pub clamped: usize,
    /// `C(n+d, n) − Σ C(mᵢ−1+n, n)`.
    pub raw: i64,
}

pub fn expected_dimension(n: usize, d: usize, multiplicities: &[u32]) -> ExpectedDimension {
    let total = monomial_count(n + 1, d) as i64;
    let conditions: i64 = multiplicities.iter().map(|&m| point_conditions(n, m) as i64).sum();
    let raw = total - conditions;
    ExpectedDimension { clamped: raw.max(0) as usize, raw }
}

fn point_conditions(n: usize, m: u32) -> usize {
    binomial(m as u64 - 1 + n as u64, n as u64) as usize
}

/// Rows of one point: derivatives of order `min(m − 1, d)` in basis order.
///
/// When `m − 1 > d` a nonzero form cannot have the point with multiplicity
/// `m`, and the order-`d` derivatives (which kill every form) express that.
fn point_rows(point: &ProjectivePoint, m: u32, basis: &MonomialBasis, field: &PrimeField) -> Vec<Vec<u32>> {
    let vars = point.coordinates.len();
    let d = basis.degree();
    let order = (m as usize - 1).min(d);
    let derivatives = MonomialBasis::new(vars, order).expect("at least one variable");
    // powers[i][e] = xᵢ^e, falling[a][b] = a(a−1)…(a−b+1)
    let powers: Vec<Vec<u32>> = point
        .coordinates
        .iter()
        .map(|&x| {
            let mut p = vec![1u32; d + 1];
            for e in 1..=d {
                p[e] = field.mul(p[e - 1], x);
            }
            p
        })
        .collect();
    let falling: Vec<Vec<u32>> = (0..=d)
        .map(|a| {
            let mut row = vec![1u32; a + 1];
            for b in 1..=a {
                row[b] = field.mul(row[b - 1], (a - b + 1) as u32);
            }
            row
        })
        .collect();
    derivatives
        .iter()
        .map(|beta| {
            basis
                .iter()
                .map(|alpha| {
                    let mut acc = 1u32;
                    for (i, (&a, &b)) in alpha.exponents().iter().zip(beta.exponents()).enumerate() {
                        if b > a {
                            return 0;
                        }
                        let (a, b) = (a as usize, b as usize);
                        acc = field.mul(acc, field.mul(falling[a][b], powers[i][a - b]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn condition_matrix(system: &FatPointSystem) -> Result<DenseMatrix> {
    let basis = MonomialBasis::new(system.n + 1, system.d)?;
    let f = system.field;
    let blocks: Vec<Vec<Vec<u32>>> =
        system.assignments.par_iter().map(|(p, m)| point_rows(p, *m, &basis, &f)).collect();
    let rows: Vec<Vec<u32>> = blocks.into_iter().flatten().collect();
    DenseMatrix::from_rows(&rows, basis.len(), f)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SystemDimension {
    pub actual: usize,
    pub expected: usize,
    pub raw_expected: i64,
    /// `actual − expected`.
    pub defect: usize,
    /// Rank of the condition matrix.
    pub conditions_imposed: usize,
}

impl SystemDimension {
    pub fn is_special(&self) -> bool {
        self.defect > 0
    }
}

pub fn linear_system_dimension(system: &FatPointSystem) -> Result<SystemDimension> {
    let m = condition_matrix(system)?;
    let rank = linalg::rank(&m).rank;
    let actual = m.cols() - rank;
    let e = expected_dimension(system.n, system.d, &system.multiplicities());
    if actual < e.clamped {
        return Err(structural(format!(
            "actual dimension {actual} below expected {}: rank exceeded the condition count",
            e.clamped
        )));
    }
    Ok(SystemDimension {
        actual,
        expected: e.clamped,
        raw_expected: e.raw,
        defect: actual - e.clamped,
        conditions_imposed: rank,
    })
}

/// A basis of the forms in the system, in the canonical kernel order.
pub fn system_basis(system: &FatPointSystem) -> Result<Vec<DegreeSlice>> {
    let m = condition_matrix(system)?;
    kernel_basis(&m.transpose()).into_iter().map(|c| DegreeSlice::new(system.n + 1, system.d, c)).collect()
}

/// Whether `form` satisfies every condition of the system exactly.
pub fn satisfies(system: &FatPointSystem, form: &DegreeSlice) -> Result<bool> {
    if form.vars() != system.n + 1 || form.degree() != system.d {
        return Err(structural("form does not live in the system's space"));
    }
    let m = condition_matrix(system)?;
    Ok(m.right_mul(form.coefficients()).iter().all(|&x| x == 0))
}

/// Alexander–Hirschowitz list of special systems of `s` general double points
/// in `Pⁿ` in degree `d`: quadrics with `2 ≤ s ≤ n`, and the four sporadic cases.
pub fn ah_exceptional(n: usize, d: usize, s: usize) -> bool {
    (d == 2 && (2..=n).contains(&s)) || matches!((d, n, s), (3, 4, 7) | (4, 2, 5) | (4, 3, 9) | (4, 4, 14))
}

pub fn ah_exceptional_system(system: &FatPointSystem) -> Result<bool> {
    if system.assignments.iter().any(|a| a.1 != 2) {
        return Err(domain("classification known only for double points"));
    }
    Ok(ah_exceptional(system.n, system.d, system.assignments.len()))
}
