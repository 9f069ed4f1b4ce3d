//! Homogeneous slices of `F_p[x₀,…,x_{v−1}]` over a canonical monomial basis.
//!
//! Monomials of a fixed degree are ordered by descending lexicographic order
//! on their exponent vectors, so `x₀^d` always has index 0 and `x_{v−1}^d`
//! is last. Coefficient vectors in reports follow this order.

use std::fmt;

use crate::error::{domain, structural, Result};
use crate::field::PrimeField;

/// Largest degree for which expansions are supported; `p > 10⁶` makes every
/// factorial up to this bound a unit.
pub const MAX_DEGREE: usize = 60;

/// `C(n, k)` as an exact integer; saturates instead of overflowing.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Number of degree-`d` monomials in `v` variables, `C(d+v−1, v−1)`.
pub fn monomial_count(v: usize, d: usize) -> usize {
    if v == 0 {
        return usize::from(d == 0);
    }
    binomial((d + v - 1) as u64, (v - 1) as u64) as usize
}

/// [`monomial_count`] with the preconditions checked on signed input.
pub fn try_monomial_count(v: usize, d: i64) -> Result<usize> {
    if v == 0 {
        return Err(domain("need at least one variable"));
    }
    if d < 0 {
        return Err(domain(format!("negative degree {d}")));
    }
    Ok(monomial_count(v, d as usize))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(domain("monomial needs at least one variable"));
        }
        Ok(Monomial { exponents })
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn vars(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> usize {
        self.exponents.iter().map(|&e| e as usize).sum()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            match e {
                1 => write!(f, "x{i}")?,
                _ => write!(f, "x{i}^{e}")?,
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Enumerated monomials of degree `d` in `v` variables with an index bijection.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    v: usize,
    d: usize,
    monomials: Vec<Monomial>,
}

impl MonomialBasis {
    pub fn new(v: usize, d: usize) -> Result<Self> {
        if v == 0 {
            return Err(domain("need at least one variable"));
        }
        let mut monomials = Vec::with_capacity(monomial_count(v, d));
        let mut current = vec![0u32; v];
        fill(&mut current, 0, d, &mut monomials);
        Ok(MonomialBasis { v, d, monomials })
    }

    pub fn vars(&self) -> usize {
        self.v
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Monomial> {
        self.monomials.iter()
    }

    pub fn monomial_at(&self, index: usize) -> Result<&Monomial> {
        self.monomials
            .get(index)
            .ok_or_else(|| structural(format!("index {index} out of range for {} monomials", self.len())))
    }

    pub fn index_of(&self, m: &Monomial) -> Result<usize> {
        if m.vars() != self.v || m.degree() != self.d {
            return Err(structural(format!(
                "monomial {m} is not in the degree-{} basis in {} variables",
                self.d, self.v
            )));
        }
        Ok(lex_rank(m.exponents()))
    }
}

fn fill(current: &mut Vec<u32>, pos: usize, remaining: usize, out: &mut Vec<Monomial>) {
    if pos + 1 == current.len() {
        current[pos] = remaining as u32;
        out.push(Monomial { exponents: current.clone() });
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e as u32;
        fill(current, pos + 1, remaining - e, out);
    }
}

/// Position of an exponent vector in the descending-lex enumeration of its degree.
pub fn lex_rank(exponents: &[u32]) -> usize {
    let v = exponents.len();
    let mut remaining: usize = exponents.iter().map(|&e| e as usize).sum();
    let mut index = 0usize;
    for (i, &e) in exponents.iter().enumerate().take(v.saturating_sub(1)) {
        let e = e as usize;
        // monomials whose i-th exponent exceeds e come first
        let rest = v - i - 1;
        for bigger in e + 1..=remaining {
            index += monomial_count(rest, remaining - bigger);
        }
        remaining -= e;
    }
    index
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    coefficients: Vec<u32>,
}

impl LinearForm {
    pub fn new(coefficients: Vec<u32>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(domain("linear form needs at least one variable"));
        }
        if coefficients.iter().all(|&c| c == 0) {
            return Err(domain("linear form is zero"));
        }
        Ok(LinearForm { coefficients })
    }

    /// The coordinate form `x_i` in `v` variables.
    pub fn variable(v: usize, i: usize) -> Result<Self> {
        if i >= v {
            return Err(domain(format!("variable x{i} out of range for {v} variables")));
        }
        let mut c = vec![0; v];
        c[i] = 1;
        Self::new(c)
    }

    pub fn coefficients(&self) -> &[u32] {
        &self.coefficients
    }

    pub fn vars(&self) -> usize {
        self.coefficients.len()
    }

    pub fn to_slice(&self) -> DegreeSlice {
        DegreeSlice { v: self.vars(), d: 1, coefficients: self.coefficients.clone() }
    }
}

/// A homogeneous polynomial of degree `d` in `v` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DegreeSlice {
    v: usize,
    d: usize,
    coefficients: Vec<u32>,
}

impl DegreeSlice {
    pub fn new(v: usize, d: usize, coefficients: Vec<u32>) -> Result<Self> {
        if v == 0 {
            return Err(domain("need at least one variable"));
        }
        let n = monomial_count(v, d);
        if coefficients.len() != n {
            return Err(structural(format!(
                "{} coefficients for a degree-{d} slice in {v} variables (expected {n})",
                coefficients.len()
            )));
        }
        Ok(DegreeSlice { v, d, coefficients })
    }

    pub fn zero(v: usize, d: usize) -> Self {
        DegreeSlice { v, d, coefficients: vec![0; monomial_count(v, d)] }
    }

    pub fn monomial(m: &Monomial) -> Self {
        let mut s = Self::zero(m.vars(), m.degree());
        s.coefficients[lex_rank(m.exponents())] = 1;
        s
    }

    pub fn vars(&self) -> usize {
        self.v
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn coefficients(&self) -> &[u32] {
        &self.coefficients
    }

    pub fn into_coefficients(self) -> Vec<u32> {
        self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, c: u32, field: &PrimeField) -> DegreeSlice {
        let coefficients = self.coefficients.iter().map(|&x| field.mul(x, c)).collect();
        DegreeSlice { v: self.v, d: self.d, coefficients }
    }

    pub fn add(&self, other: &DegreeSlice, field: &PrimeField) -> Result<DegreeSlice> {
        if self.v != other.v || self.d != other.d {
            return Err(structural("adding slices of different shapes"));
        }
        let coefficients = self.coefficients.iter().zip(&other.coefficients).map(|(&a, &b)| field.add(a, b)).collect();
        Ok(DegreeSlice { v: self.v, d: self.d, coefficients })
    }

    /// Evaluates at a point given by `v` coordinates.
    pub fn evaluate(&self, point: &[u32], field: &PrimeField) -> u32 {
        let basis = MonomialBasis::new(self.v, self.d).expect("v >= 1");
        basis.iter().zip(&self.coefficients).filter(|(_, &c)| c != 0).fold(0, |acc, (m, &c)| {
            let zero = vec![0u32; self.v];
            field.add(acc, field.mul(c, derivative_row_entry(m.exponents(), &zero, point, field)))
        })
    }

    /// Partial derivative with respect to `x_var`.
    pub fn partial(&self, var: usize, field: &PrimeField) -> Result<DegreeSlice> {
        if var >= self.v {
            return Err(domain(format!("variable x{var} out of range")));
        }
        if self.d == 0 {
            return Ok(DegreeSlice::zero(self.v, 0));
        }
        let basis = MonomialBasis::new(self.v, self.d)?;
        let mut out = DegreeSlice::zero(self.v, self.d - 1);
        for (m, &c) in basis.iter().zip(&self.coefficients) {
            let e = m.exponents()[var];
            if c == 0 || e == 0 {
                continue;
            }
            let mut lowered = m.exponents().to_vec();
            lowered[var] -= 1;
            let idx = lex_rank(&lowered);
            out.coefficients[idx] = field.add(out.coefficients[idx], field.mul(c, e));
        }
        Ok(out)
    }
}

fn factorials(n: usize, field: &PrimeField) -> Vec<u32> {
    let mut f = Vec::with_capacity(n + 1);
    f.push(1u32);
    for i in 1..=n {
        f.push(field.mul(f[i - 1], i as u32));
    }
    f
}

/// Expands `ℓ^k`: the coefficient of `x^α` is `k!/α! · ∏ cᵢ^{αᵢ}`.
pub fn expand_power(form: &LinearForm, k: usize, field: &PrimeField) -> Result<DegreeSlice> {
    if k > MAX_DEGREE {
        return Err(domain(format!("power {k} exceeds the supported degree {MAX_DEGREE}")));
    }
    let v = form.vars();
    let fact = factorials(k, field);
    let inv_fact: Vec<u32> = fact.iter().map(|&x| field.inv(x)).collect::<Result<_>>()?;
    // powers[i][e] = c_i^e
    let powers: Vec<Vec<u32>> = form
        .coefficients()
        .iter()
        .map(|&c| {
            let mut p = vec![1u32; k + 1];
            for e in 1..=k {
                p[e] = field.mul(p[e - 1], c);
            }
            p
        })
        .collect();
    let basis = MonomialBasis::new(v, k)?;
    let coefficients = basis
        .iter()
        .map(|m| {
            m.exponents()
                .iter()
                .enumerate()
                .fold(fact[k], |acc, (i, &e)| field.mul(field.mul(acc, inv_fact[e as usize]), powers[i][e as usize]))
        })
        .collect();
    Ok(DegreeSlice { v, d: k, coefficients })
}

/// Product of two slices in the same number of variables.
pub fn multiply(a: &DegreeSlice, b: &DegreeSlice, field: &PrimeField) -> Result<DegreeSlice> {
    if a.v != b.v {
        return Err(structural(format!("multiplying slices in {} and {} variables", a.v, b.v)));
    }
    let ba = MonomialBasis::new(a.v, a.d)?;
    let bb = MonomialBasis::new(b.v, b.d)?;
    let p = field.modulus() as u64;
    let mut acc = vec![0u64; monomial_count(a.v, a.d + b.d)];
    let mut sum = vec![0u32; a.v];
    for (ma, &ca) in ba.iter().zip(&a.coefficients) {
        if ca == 0 {
            continue;
        }
        for (mb, &cb) in bb.iter().zip(&b.coefficients) {
            if cb == 0 {
                continue;
            }
            for (s, (x, y)) in sum.iter_mut().zip(ma.exponents().iter().zip(mb.exponents())) {
                *s = x + y;
            }
            let idx = lex_rank(&sum);
            acc[idx] = (acc[idx] + ca as u64 * cb as u64) % p;
        }
    }
    Ok(DegreeSlice { v: a.v, d: a.d + b.d, coefficients: acc.into_iter().map(|x| x as u32).collect() })
}

/// Multiplies a slice by a monomial, returning the coefficient vector in the
/// degree `deg(m) + deg(s)` basis. No arithmetic is needed: this only moves entries.
pub fn shift_by_monomial(m: &Monomial, s: &DegreeSlice, terms: &[Monomial]) -> Vec<u32> {
    let mut out = vec![0u32; monomial_count(s.v, s.d + m.degree())];
    let mut sum = vec![0u32; s.v];
    for (t, &c) in terms.iter().zip(&s.coefficients) {
        if c == 0 {
            continue;
        }
        for (x, (a, b)) in sum.iter_mut().zip(t.exponents().iter().zip(m.exponents())) {
            *x = a + b;
        }
        out[lex_rank(&sum)] = c;
    }
    out
}

/// `∂^β x^α` evaluated at `point`: `∏ αᵢ(αᵢ−1)…(αᵢ−βᵢ+1) · point^{α−β}`, or 0 unless `β ≤ α`.
pub fn derivative_row_entry(alpha: &[u32], beta: &[u32], point: &[u32], field: &PrimeField) -> u32 {
    let mut acc = 1u32;
    for ((&a, &b), &x) in alpha.iter().zip(beta).zip(point) {
        if b > a {
            return 0;
        }
        for j in 0..b {
            acc = field.mul(acc, a - j);
        }
        acc = field.mul(acc, field.pow(x, (a - b) as u64));
        if acc == 0 {
            return 0;
        }
    }
    acc
}
