//! Hilbert functions, syzygies and multiplication maps of `A = R/(L₁^{k₁},…,L_s^{k_s})`.
//!
//! Every dimension here is `dim R_d` minus the rank of a matrix whose rows
//! are products `m·Lᵢ^{kᵢ}` of a multiplier monomial with an expanded power.

use serde::Serialize;

use crate::error::{domain, structural, Result};
use crate::field::PrimeField;
use crate::linalg::{self, echelon_streaming, DenseMatrix, Echelon};
use crate::poly::{expand_power, monomial_count, shift_by_monomial, DegreeSlice, LinearForm, MonomialBasis};
use crate::random::{random_form, rng_for, Stream};

/// Default degree cap for Hilbert functions.
pub const DEFAULT_CAP: usize = 30;

/// The ideal generated by powers of linear forms in `vars` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerIdealSpec {
    vars: usize,
    generators: Vec<(LinearForm, usize)>,
    seed: Option<u64>,
    field: PrimeField,
}

impl PowerIdealSpec {
    pub fn new(vars: usize, generators: Vec<(LinearForm, usize)>, field: PrimeField) -> Result<Self> {
        if generators.is_empty() {
            return Err(domain("an ideal needs at least one generator"));
        }
        for (l, k) in &generators {
            if l.vars() != vars {
                return Err(structural(format!("generator in {} variables for a ring in {vars}", l.vars())));
            }
            if *k == 0 {
                return Err(domain("generator powers must be at least 1"));
            }
            if l.coefficients().iter().any(|&c| c >= field.modulus()) {
                return Err(structural("form coefficient is not a canonical residue"));
            }
        }
        Ok(PowerIdealSpec { vars, generators, seed: None, field })
    }

    /// `count` general forms raised to `power`, drawn from `seed`.
    pub fn random(vars: usize, count: usize, power: usize, seed: u64, field: PrimeField) -> Result<Self> {
        if vars == 0 {
            return Err(domain("need at least one variable"));
        }
        let mut rng = rng_for(seed, Stream::Generators);
        let generators = (0..count).map(|_| (random_form(&mut rng, vars, &field), power)).collect();
        let mut spec = Self::new(vars, generators, field)?;
        spec.seed = Some(seed);
        Ok(spec)
    }

    /// Eight general cubes in seven variables.
    pub fn eight_cubes(seed: u64, field: PrimeField) -> Self {
        Self::random(7, 8, 3, seed, field).expect("fixed shape is valid")
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn generators(&self) -> &[(LinearForm, usize)] {
        &self.generators
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// The common generator power, if all powers agree.
    pub fn uniform_power(&self) -> Option<usize> {
        let k = self.generators[0].1;
        self.generators.iter().all(|g| g.1 == k).then_some(k)
    }

    /// `I + (L)`: appends `L` as a power-1 generator.
    pub fn extended(&self, form: &LinearForm) -> Result<Self> {
        let mut generators = self.generators.clone();
        generators.push((form.clone(), 1));
        let mut spec = Self::new(self.vars, generators, self.field)?;
        spec.seed = self.seed;
        Ok(spec)
    }

    /// The image of the ideal in `R/(L) ≅ F_p[v−1 variables]`.
    ///
    /// The largest-index variable with a nonzero coefficient in `L` is
    /// eliminated by solving `L = 0` for it; each generator stays a power of
    /// a linear form with the same exponent.
    pub fn restrict_to_hyperplane(&self, form: &LinearForm) -> Result<Self> {
        if form.vars() != self.vars {
            return Err(structural("hyperplane form has the wrong number of variables"));
        }
        if self.vars < 2 {
            return Err(domain("cannot restrict a ring in one variable"));
        }
        let f = &self.field;
        let c = form.coefficients();
        let j = c.iter().rposition(|&x| x != 0).ok_or_else(|| domain("linear form is zero"))?;
        let inv = f.inv(c[j])?;
        let mut generators = Vec::with_capacity(self.generators.len());
        for (g, k) in &self.generators {
            let a = g.coefficients();
            // x_j = −(1/c_j)·Σ_{i≠j} c_i x_i
            let ratio = f.mul(a[j], inv);
            let coeffs: Vec<u32> =
                (0..self.vars).filter(|&i| i != j).map(|i| f.sub(a[i], f.mul(ratio, c[i]))).collect();
            let restricted =
                LinearForm::new(coeffs).map_err(|_| domain("a generator is proportional to the hyperplane form"))?;
            generators.push((restricted, *k));
        }
        let mut spec = Self::new(self.vars - 1, generators, self.field)?;
        spec.seed = self.seed;
        Ok(spec)
    }

    fn expanded(&self) -> Result<Vec<(DegreeSlice, usize)>> {
        self.generators.iter().map(|(l, k)| Ok((expand_power(l, *k, &self.field)?, *k))).collect()
    }

    /// Rows `m·Lᵢ^{kᵢ}` spanning `I_d`: powers ascending, then multiplier
    /// monomials in basis order, then generators in order.
    pub fn ideal_rows(&self, d: usize) -> Result<impl Iterator<Item = Vec<u32>>> {
        let expanded = self.expanded()?;
        let mut powers: Vec<usize> = expanded.iter().map(|e| e.1).filter(|&k| k <= d).collect();
        powers.sort_unstable();
        powers.dedup();
        let v = self.vars;
        let mut plan = Vec::new();
        for k in powers {
            let multipliers = MonomialBasis::new(v, d - k)?;
            let terms = MonomialBasis::new(v, k)?.iter().cloned().collect::<Vec<_>>();
            let gens: Vec<DegreeSlice> = expanded.iter().filter(|e| e.1 == k).map(|e| e.0.clone()).collect();
            plan.push((multipliers, terms, gens));
        }
        Ok(plan.into_iter().flat_map(|(multipliers, terms, gens)| {
            multipliers.iter().cloned().collect::<Vec<_>>().into_iter().flat_map(move |m| {
                let terms = terms.clone();
                gens.clone().into_iter().map(move |g| shift_by_monomial(&m, &g, &terms))
            })
        }))
    }

    /// A spanning subset of [`Self::ideal_rows`] without the rows made
    /// redundant by Koszul relations, in generator-major order.
    ///
    /// Row `m·g_j` is dropped when `m` is the leading monomial of some
    /// element of `(g_1,…,g_{j−1})` in degree `d − k_j`: writing that element
    /// as `m + (smaller terms)`, its product with `g_j` lies in the span of the
    /// earlier generators' rows, and induction on the monomial order shows
    /// every dropped row stays in the span of the kept ones.
    pub fn ideal_rows_pruned(&self, d: usize) -> Result<Vec<Vec<u32>>> {
        let expanded = self.expanded()?;
        let v = self.vars;
        let mut rows = Vec::new();
        for (j, (g, k)) in expanded.iter().enumerate() {
            if *k > d {
                continue;
            }
            let multipliers = MonomialBasis::new(v, d - k)?;
            let terms: Vec<_> = MonomialBasis::new(v, *k)?.iter().cloned().collect();
            let leading = if j == 0 {
                None
            } else {
                let earlier = PowerIdealSpec::new(v, self.generators[..j].to_vec(), self.field)?;
                Some(earlier.ideal_echelon(d - k)?)
            };
            for (idx, m) in multipliers.iter().enumerate() {
                if leading.as_ref().is_some_and(|e| e.is_pivot(idx)) {
                    continue;
                }
                rows.push(shift_by_monomial(m, g, &terms));
            }
        }
        Ok(rows)
    }

    /// Number of rows produced by [`Self::ideal_rows`].
    pub fn ideal_row_count(&self, d: usize) -> usize {
        self.generators.iter().filter(|g| g.1 <= d).map(|g| monomial_count(self.vars, d - g.1)).sum()
    }

    /// Echelon basis of `I_d` inside `R_d`.
    pub fn ideal_echelon(&self, d: usize) -> Result<Echelon> {
        let ncols = monomial_count(self.vars, d);
        Ok(echelon_streaming(self.ideal_rows(d)?, ncols, &self.field)?.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Termination {
    Vanished,
    Cap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertFunction {
    /// `dim A_d` for `d = 0, 1, …`; ends with the first zero when `termination` is `Vanished`.
    pub dims: Vec<usize>,
    pub termination: Termination,
}

impl HilbertFunction {
    /// `dim A_d`, using that `A` is generated in degree 1 past the first zero.
    pub fn get(&self, d: usize) -> Option<usize> {
        match self.dims.get(d) {
            Some(&x) => Some(x),
            None if self.termination == Termination::Vanished => Some(0),
            None => None,
        }
    }

    pub fn socle_degree(&self) -> Option<usize> {
        match self.termination {
            Termination::Vanished => self.dims.iter().rposition(|&x| x > 0),
            Termination::Cap => None,
        }
    }
}

/// `dim A_d = dim R_d − rank I_d`.
pub fn hilbert_dimension(spec: &PowerIdealSpec, d: usize) -> Result<usize> {
    let ncols = monomial_count(spec.vars(), d);
    let s = linalg::rank_streaming(spec.ideal_rows_pruned(d)?, ncols, &spec.field())?;
    Ok(ncols - s.result.rank)
}

pub fn hilbert_function(spec: &PowerIdealSpec, cap: usize) -> Result<HilbertFunction> {
    let mut dims = Vec::new();
    for d in 0..=cap {
        let h = hilbert_dimension(spec, d)?;
        dims.push(h);
        if h == 0 {
            return Ok(HilbertFunction { dims, termination: Termination::Vanished });
        }
    }
    Ok(HilbertFunction { dims, termination: Termination::Cap })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SyzygyCount {
    pub coefficient_degree: usize,
    pub dimension: usize,
    pub koszul_lower_bound: usize,
}

fn require_uniform_power(spec: &PowerIdealSpec) -> Result<usize> {
    spec.uniform_power().ok_or_else(|| domain("syzygies are only defined here for a common generator power"))
}

/// Matrix of `⊕ᵢ R_t → R_{t+k}`, `(fᵢ) ↦ Σ fᵢ·Lᵢ^k`: row block `i` holds `m·Lᵢ^k` for `m ∈ R_t`.
pub fn syzygy_matrix(spec: &PowerIdealSpec, t: usize) -> Result<DenseMatrix> {
    let k = require_uniform_power(spec)?;
    let v = spec.vars();
    let f = spec.field();
    let multipliers = MonomialBasis::new(v, t)?;
    let terms: Vec<_> = MonomialBasis::new(v, k)?.iter().cloned().collect();
    let ncols = monomial_count(v, t + k);
    let mut entries = Vec::with_capacity(spec.generators().len() * multipliers.len() * ncols);
    for (l, _) in spec.generators() {
        let g = expand_power(l, k, &f)?;
        for m in multipliers.iter() {
            entries.extend(shift_by_monomial(m, &g, &terms));
        }
    }
    DenseMatrix::new(spec.generators().len() * multipliers.len(), ncols, entries, f)
}

/// Dimension of the degree-`t` syzygies among the generators (left nullity of
/// [`syzygy_matrix`]), with the dimension of the span of the Koszul relations
/// as a lower bound.
pub fn syzygy_dimension(spec: &PowerIdealSpec, t: usize) -> Result<SyzygyCount> {
    let m = syzygy_matrix(spec, t)?;
    let r = linalg::rank(&m);
    let koszul_lower_bound = koszul_basis_for(spec, t, &m)?.rank;
    Ok(SyzygyCount { coefficient_degree: t, dimension: m.rows() - r.rank, koszul_lower_bound })
}

/// Dimension of the span of the degree-`t` Koszul relations.
pub fn koszul_rank(spec: &PowerIdealSpec, t: usize) -> Result<usize> {
    Ok(koszul_basis(spec, t)?.rank)
}

/// Number of Koszul relations in coefficient degree `t`, an upper bound for the dimension of their span.
pub fn koszul_relation_count(gens: usize, vars: usize, t: usize, k: usize) -> usize {
    if t < k {
        0
    } else {
        gens * gens.saturating_sub(1) / 2 * monomial_count(vars, t - k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulBasis {
    pub vectors: Vec<Vec<u32>>,
    /// `t < k`: there are no Koszul relations in this degree.
    pub below_power: bool,
    pub in_kernel: bool,
    pub rank: usize,
    pub independent: bool,
}

/// Koszul relations `m·L_j^k·eᵢ − m·Lᵢ^k·e_j` for `i < j` and `deg m = t − k`.
pub fn koszul_basis(spec: &PowerIdealSpec, t: usize) -> Result<KoszulBasis> {
    koszul_basis_for(spec, t, &syzygy_matrix(spec, t)?)
}

fn koszul_basis_for(spec: &PowerIdealSpec, t: usize, matrix: &DenseMatrix) -> Result<KoszulBasis> {
    let k = require_uniform_power(spec)?;
    if t < k {
        return Ok(KoszulBasis { vectors: Vec::new(), below_power: true, in_kernel: true, rank: 0, independent: true });
    }
    let v = spec.vars();
    let f = spec.field();
    let slot = monomial_count(v, t);
    let terms: Vec<_> = MonomialBasis::new(v, k)?.iter().cloned().collect();
    let powers: Vec<DegreeSlice> =
        spec.generators().iter().map(|(l, _)| expand_power(l, k, &f)).collect::<Result<_>>()?;
    let multipliers = MonomialBasis::new(v, t - k)?;
    let n = powers.len();
    let mut vectors = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for m in multipliers.iter() {
                let mut vec = vec![0u32; n * slot];
                let a = shift_by_monomial(m, &powers[j], &terms);
                let b = shift_by_monomial(m, &powers[i], &terms);
                vec[i * slot..(i + 1) * slot].copy_from_slice(&a);
                for (dst, &x) in vec[j * slot..(j + 1) * slot].iter_mut().zip(&b) {
                    *dst = f.neg(x);
                }
                vectors.push(vec);
            }
        }
    }
    let in_kernel = vectors.iter().all(|x| matrix.left_mul(x).iter().all(|&c| c == 0));
    let rank = linalg::rank(&DenseMatrix::from_rows(&vectors, n * slot, f)?).rank;
    let independent = rank == vectors.len();
    Ok(KoszulBasis { vectors, below_power: false, in_kernel, rank, independent })
}

/// One multiplication map `×L : A_d → A_{d+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LefschetzStep {
    pub degree: usize,
    pub dim_source: usize,
    pub dim_target: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    pub coker_dim: usize,
    pub maximal_rank: bool,
}

impl LefschetzStep {
    /// Builds the step from `dim A_d`, `dim A_{d+1}` and `dim (A/LA)_{d+1}`.
    pub fn from_dims(degree: usize, dim_source: usize, dim_target: usize, coker_dim: usize) -> Result<Self> {
        if coker_dim > dim_target || dim_target - coker_dim > dim_source {
            return Err(structural(format!(
                "inconsistent dimensions at degree {degree}: source {dim_source}, target {dim_target}, cokernel {coker_dim}"
            )));
        }
        let rank = dim_target - coker_dim;
        Ok(LefschetzStep {
            degree,
            dim_source,
            dim_target,
            rank,
            kernel_dim: dim_source - rank,
            coker_dim,
            maximal_rank: rank == dim_source.min(dim_target),
        })
    }

    pub fn injective(&self) -> bool {
        self.kernel_dim == 0
    }

    pub fn surjective(&self) -> bool {
        self.coker_dim == 0
    }
}

/// `dim (A/LA)_d` computed in `v` variables from `I + (L)`.
pub fn quotient_dimension_extension(spec: &PowerIdealSpec, form: &LinearForm, d: usize) -> Result<usize> {
    hilbert_dimension(&spec.extended(form)?, d)
}

/// `dim (A/LA)_d` computed in `v − 1` variables after eliminating a variable with `L = 0`.
pub fn quotient_dimension_restriction(spec: &PowerIdealSpec, form: &LinearForm, d: usize) -> Result<usize> {
    hilbert_dimension(&spec.restrict_to_hyperplane(form)?, d)
}

pub fn lefschetz_step(spec: &PowerIdealSpec, form: &LinearForm, d: usize) -> Result<LefschetzStep> {
    let source = hilbert_dimension(spec, d)?;
    let target = hilbert_dimension(spec, d + 1)?;
    // restriction fails in one variable or when some Lᵢ is proportional to L
    let coker = match spec.restrict_to_hyperplane(form) {
        Ok(restricted) => hilbert_dimension(&restricted, d + 1)?,
        Err(_) => quotient_dimension_extension(spec, form, d + 1)?,
    };
    LefschetzStep::from_dims(d, source, target, coker)
}

/// Rank of `×L : A_d → A_{d+1}` from an explicit matrix on monomial bases of the quotients.
///
/// The basis of `A_d` is the set of non-pivot monomials of `I_d`; images are
/// put in normal form modulo `I_{d+1}`. Materializes both echelon bases, so
/// this is intended for small degrees.
pub fn multiplication_rank_direct(spec: &PowerIdealSpec, form: &LinearForm, d: usize) -> Result<usize> {
    let v = spec.vars();
    let f = spec.field();
    let source = spec.ideal_echelon(d)?;
    let target = spec.ideal_echelon(d + 1)?;
    let source_basis: Vec<usize> = (0..source.ncols()).filter(|&c| !source.is_pivot(c)).collect();
    let target_basis: Vec<usize> = (0..target.ncols()).filter(|&c| !target.is_pivot(c)).collect();
    if source_basis.is_empty() || target_basis.is_empty() {
        return Ok(0);
    }
    let monomials = MonomialBasis::new(v, d)?;
    let linear_terms: Vec<_> = MonomialBasis::new(v, 1)?.iter().cloned().collect();
    let l = form.to_slice();
    let mut rows = Vec::with_capacity(source_basis.len());
    for &c in &source_basis {
        let image = shift_by_monomial(monomials.monomial_at(c)?, &l, &linear_terms);
        let normal = target.reduce(&image);
        rows.push(target_basis.iter().map(|&t| normal[t]).collect::<Vec<u32>>());
    }
    Ok(linalg::rank(&DenseMatrix::from_rows(&rows, target_basis.len(), f)?).rank)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WlpProfile {
    pub steps: Vec<LefschetzStep>,
    pub hilbert: HilbertFunction,
    pub quotient_hilbert: HilbertFunction,
}

impl WlpProfile {
    pub fn failing_degrees(&self) -> Vec<usize> {
        self.steps.iter().filter(|s| !s.maximal_rank).map(|s| s.degree).collect()
    }
}

/// Steps `×L : A_d → A_{d+1}` for every `d ≤ cap` with `A_d ≠ 0`.
///
/// Degrees past the socle map zero to zero and are omitted.
pub fn wlp_profile(spec: &PowerIdealSpec, form: &LinearForm, cap: usize) -> Result<WlpProfile> {
    let hilbert = hilbert_function(spec, cap + 1)?;
    let quotient_hilbert = hilbert_function(&spec.restrict_to_hyperplane(form)?, cap + 1)?;
    let mut steps = Vec::new();
    for d in 0..=cap {
        let source = hilbert.get(d).expect("computed up to cap + 1");
        if source == 0 {
            break;
        }
        let target = hilbert.get(d + 1).expect("computed up to cap + 1");
        let coker = quotient_hilbert.get(d + 1).expect("computed up to cap + 1");
        steps.push(LefschetzStep::from_dims(d, source, target, coker)?);
    }
    Ok(WlpProfile { steps, hilbert, quotient_hilbert })
}

/// The Lefschetz form used with a seeded instance.
pub fn general_form(vars: usize, seed: u64, field: &PrimeField) -> LinearForm {
    random_form(&mut rng_for(seed, Stream::LefschetzForm), vars, field)
}
