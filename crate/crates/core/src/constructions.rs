//! The concrete scenarios around `I = (L₁³,…,L₈³) ⊂ F_p[x₀,…,x₆]`: hyperplane
//! restriction, the pencil of cubics through nine double points of `P⁵`,
//! sextics with quadruple points built from it, Macaulay duality checks,
//! and the claim reports for degrees 3 and 5.

use serde::Serialize;

use crate::artinian::{
    general_form, hilbert_dimension, koszul_basis, koszul_rank, koszul_relation_count, lefschetz_step,
    multiplication_rank_direct, quotient_dimension_extension, syzygy_dimension, wlp_profile, HilbertFunction,
    LefschetzStep, PowerIdealSpec, DEFAULT_CAP,
};
use crate::error::{domain, Result};
use crate::fatpoints::{
    ah_exceptional, condition_matrix, dual_points, expected_dimension, linear_system_dimension, random_points,
    system_basis, FatPointSystem, ProjectivePoint, SystemDimension,
};
use crate::field::PrimeField;
use crate::linalg::{self, DenseMatrix, Echelon};
use crate::poly::{monomial_count, multiply, DegreeSlice, LinearForm};
use crate::random::{nonzero_vector, reseed, rng_for, Stream};
use crate::report::{CertificateKind, Claim, ClaimValue, Expectation, Provenance, Verdict};

/// Attempts per scenario: the requested seed plus re-seeds.
pub const DEFAULT_TRIALS: u64 = 3;

pub fn restrict_to_hyperplane(spec: &PowerIdealSpec, form: &LinearForm) -> Result<PowerIdealSpec> {
    spec.restrict_to_hyperplane(form)
}

/// The seeded instance: eight general cubes in seven variables, a general
/// Lefschetz form, and the restriction of the ideal to its hyperplane.
#[derive(Clone, Debug)]
pub struct EightCubes {
    pub seed: u64,
    pub spec: PowerIdealSpec,
    pub form: LinearForm,
    pub restricted: PowerIdealSpec,
}

impl EightCubes {
    pub fn new(seed: u64, field: PrimeField) -> Result<Self> {
        let spec = PowerIdealSpec::eight_cubes(seed, field);
        let form = general_form(spec.vars(), seed, &field);
        let restricted = spec.restrict_to_hyperplane(&form)?;
        Ok(EightCubes { seed, spec, form, restricted })
    }

    /// Dual points of the restricted generators, in `P⁵`.
    pub fn restricted_points(&self) -> Vec<ProjectivePoint> {
        let forms: Vec<LinearForm> = self.restricted.generators().iter().map(|g| g.0.clone()).collect();
        dual_points(&forms).expect("generators are nonzero")
    }
}

#[derive(Clone, Debug)]
pub struct PencilScenario {
    /// Seed that produced the scenario after `reseeds` retries.
    pub seed: u64,
    pub reseeds: u64,
    /// Eight scenario points followed by the auxiliary ninth point.
    pub points: Vec<ProjectivePoint>,
    /// `(C₁, C₂)`: cubics singular at all nine points.
    pub pencil: Vec<DegreeSlice>,
    /// `(C₁, …, C₈)`: cubics singular at the first eight points, starting with the pencil.
    pub eight_basis: Vec<DegreeSlice>,
    pub dim_nine: usize,
    pub dim_eight: usize,
    pub pencil_contained: bool,
    /// Every basis element satisfies its double-point conditions exactly.
    pub conditions_verified: bool,
}

/// Builds the pencil scenario on nine given points of `P⁵`.
pub fn pencil_scenario_from_points(points: &[ProjectivePoint], field: PrimeField) -> Result<PencilScenario> {
    if points.len() != 9 || points.iter().any(|p| p.ambient_dim() != 5) {
        return Err(domain("the pencil scenario needs nine points of P^5"));
    }
    let nine = FatPointSystem::uniform(5, 3, points, 2, field)?;
    let eight = FatPointSystem::uniform(5, 3, &points[..8], 2, field)?;
    let pencil = system_basis(&nine)?;
    let eight_kernel = system_basis(&eight)?;
    if pencil.len() != 2 || eight_kernel.len() != 8 {
        return Err(domain(format!(
            "expected cubic systems of dimensions (2, 8), found ({}, {})",
            pencil.len(),
            eight_kernel.len()
        )));
    }
    let ncols = monomial_count(6, 3);
    let mut span = Echelon::new(ncols, field);
    for c in &eight_kernel {
        span.insert(c.coefficients())?;
    }
    let pencil_contained = pencil.iter().all(|c| span.contains(c.coefficients()));

    // complete (C₁, C₂) greedily from the kernel basis of the eight-point system
    let mut completed = Echelon::new(ncols, field);
    let mut eight_basis = Vec::with_capacity(8);
    for c in pencil.iter().chain(&eight_kernel) {
        if completed.insert(c.coefficients())? {
            eight_basis.push(c.clone());
        }
    }
    let nine_rows = condition_matrix(&nine)?;
    let eight_rows = condition_matrix(&eight)?;
    let conditions_verified =
        pencil.iter().all(|c| annihilated(&nine_rows, c)) && eight_basis.iter().all(|c| annihilated(&eight_rows, c));
    Ok(PencilScenario {
        seed: 0,
        reseeds: 0,
        points: points.to_vec(),
        dim_nine: pencil.len(),
        dim_eight: eight_basis.len(),
        pencil,
        eight_basis,
        pencil_contained,
        conditions_verified,
    })
}

fn annihilated(conditions: &DenseMatrix, form: &DegreeSlice) -> bool {
    conditions.right_mul(form.coefficients()).iter().all(|&x| x == 0)
}

/// Nine points for `seed`: the dual points of the restricted seeded instance
/// plus an independent random ninth point.
pub fn pencil_points(seed: u64, field: PrimeField) -> Result<Vec<ProjectivePoint>> {
    let setup = EightCubes::new(seed, field)?;
    let mut points = setup.restricted_points();
    let extra = nonzero_vector(&mut rng_for(seed, Stream::AuxiliaryPoint), 6, &field);
    points.push(ProjectivePoint::new(extra)?);
    Ok(points)
}

/// The pencil scenario for `seed`, re-seeding up to `trials − 1` times on a dimension mismatch.
pub fn pencil_scenario(seed: u64, field: PrimeField, trials: u64) -> Result<PencilScenario> {
    let mut last = None;
    for attempt in 0..trials.max(1) {
        let s = reseed(seed, attempt);
        match pencil_scenario_from_points(&pencil_points(s, field)?, field) {
            Ok(mut scenario) => {
                scenario.seed = s;
                scenario.reseeds = attempt;
                return Ok(scenario);
            }
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

/// `C₁·Cᵢ` for `i = 1…8` and `C₂·Cⱼ` for `j = 2…8`.
pub fn pencil_products(scenario: &PencilScenario, field: &PrimeField) -> Result<Vec<DegreeSlice>> {
    let c = &scenario.eight_basis;
    let mut out = Vec::with_capacity(15);
    for ci in c {
        out.push(multiply(&c[0], ci, field)?);
    }
    for cj in &c[1..] {
        out.push(multiply(&c[1], cj, field)?);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ProductSpan {
    pub products: usize,
    pub span: usize,
    /// Expected dimension of sextics with eight quadruple points.
    pub expected_dimension: usize,
    pub vanish_at_eight: bool,
    /// Span of `{C₁², C₁C₂, C₂²}`.
    pub nine_point_span: usize,
    pub vanish_at_nine: bool,
    /// Unclamped expected dimension of sextics with nine quadruple points.
    pub nine_point_raw_expected: i64,
}

pub fn quadruple_product_span(scenario: &PencilScenario, field: PrimeField) -> Result<ProductSpan> {
    let products = pencil_products(scenario, &field)?;
    let ncols = monomial_count(6, 6);
    let eight = FatPointSystem::uniform(5, 6, &scenario.points[..8], 4, field)?;
    let eight_rows = condition_matrix(&eight)?;
    let vanish_at_eight = products.iter().all(|s| annihilated(&eight_rows, s));
    let rows: Vec<Vec<u32>> = products.iter().map(|s| s.coefficients().to_vec()).collect();
    let span = linalg::rank(&DenseMatrix::from_rows(&rows, ncols, field)?).rank;

    let (c1, c2) = (&scenario.pencil[0], &scenario.pencil[1]);
    let triple = [multiply(c1, c1, &field)?, multiply(c1, c2, &field)?, multiply(c2, c2, &field)?];
    let nine = FatPointSystem::uniform(5, 6, &scenario.points, 4, field)?;
    let nine_rows = condition_matrix(&nine)?;
    let vanish_at_nine = triple.iter().all(|s| annihilated(&nine_rows, s));
    let rows: Vec<Vec<u32>> = triple.iter().map(|s| s.coefficients().to_vec()).collect();
    let nine_point_span = linalg::rank(&DenseMatrix::from_rows(&rows, ncols, field)?).rank;

    Ok(ProductSpan {
        products: products.len(),
        span,
        expected_dimension: expected_dimension(5, 6, &[4; 8]).clamped,
        vanish_at_eight,
        nine_point_span,
        vanish_at_nine,
        nine_point_raw_expected: expected_dimension(5, 6, &[4; 9]).raw,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DualityCheck {
    pub degree: usize,
    pub artinian: usize,
    pub fat_points: usize,
    pub holds: bool,
}

/// The fat-point side: degree-`d` forms in `P^{v−1}` with multiplicity
/// `d − kᵢ + 1` at each dual point `Lᵢ^∨` (points with `d < kᵢ` are omitted).
pub fn duality_fat_point_dimension(spec: &PowerIdealSpec, d: usize) -> Result<SystemDimension> {
    let assignments: Vec<(ProjectivePoint, u32)> = spec
        .generators()
        .iter()
        .filter(|(_, k)| d + 1 > *k)
        .map(|(l, k)| Ok((ProjectivePoint::new(l.coefficients().to_vec())?, (d + 1 - k) as u32)))
        .collect::<Result<_>>()?;
    linear_system_dimension(&FatPointSystem::new(spec.vars() - 1, d, assignments, spec.field())?)
}

pub fn duality_check(spec: &PowerIdealSpec, d: usize) -> Result<DualityCheck> {
    let artinian = hilbert_dimension(spec, d)?;
    let fat_points = duality_fat_point_dimension(spec, d)?.actual;
    Ok(DualityCheck { degree: d, artinian, fat_points, holds: artinian == fat_points })
}

/// Whether `dim A_d` as computed is certified: the rank of `I_d` equals
/// `min(dim R_d, rows − dim span(Koszul relations))`, which bounds the rank
/// for general forms because the Koszul span can only shrink mod p.
pub fn hilbert_certificate(spec: &PowerIdealSpec, d: usize, dim: usize) -> Result<CertificateKind> {
    let cols = monomial_count(spec.vars(), d);
    let rows = spec.ideal_row_count(d);
    let koszul = match spec.uniform_power() {
        Some(k) if d >= k => {
            let t = d - k;
            if rows - koszul_relation_count(spec.generators().len(), spec.vars(), t, k) >= cols {
                0
            } else {
                koszul_rank(spec, t)?
            }
        }
        _ => 0,
    };
    let bound = cols.min(rows - koszul);
    Ok(CertificateKind::from_maximal_rank(cols - dim == bound))
}

fn fat_point_certificate(dim: &SystemDimension, rows: usize, cols: usize) -> CertificateKind {
    CertificateKind::from_maximal_rank(dim.conditions_imposed == rows.min(cols))
}

fn both(a: CertificateKind, b: CertificateKind) -> CertificateKind {
    CertificateKind::from_maximal_rank(a == CertificateKind::Proof && b == CertificateKind::Proof)
}

fn eq(v: impl Into<ClaimValue>) -> Expectation {
    Expectation::Equals(v.into())
}

/// A named collection of claims produced by one scenario run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScenarioReport {
    pub name: String,
    pub seed: u64,
    pub prime: u64,
    pub claims: Vec<Claim>,
}

impl ScenarioReport {
    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(Claim::passes)
    }

    pub fn claim(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }
}

/// Runs `build` for `seed`; failed pinned claims are retried under up to
/// `trials − 1` derived seeds and marked as unlucky specializations if they pass there.
pub fn with_reseeds<F>(seed: u64, trials: u64, build: F) -> Result<Vec<Claim>>
where
    F: Fn(u64) -> Result<Vec<Claim>>,
{
    let mut claims = build(seed)?;
    for attempt in 1..trials.max(1) {
        if claims.iter().all(Claim::passes) {
            break;
        }
        let retry = build(reseed(seed, attempt))?;
        for c in claims.iter_mut().filter(|c| !c.passes()) {
            if retry.iter().any(|r| r.id == c.id && r.passes()) {
                c.verdict = Verdict::UnluckySpecialization;
            }
        }
    }
    Ok(claims)
}

fn degree3_claims(seed: u64, field: PrimeField) -> Result<Vec<Claim>> {
    use CertificateKind::Proof;
    use Provenance::{Derived, Paper, Trivial};
    let setup = EightCubes::new(seed, field)?;
    let (spec, form) = (&setup.spec, &setup.form);
    let mut claims = Vec::new();

    let a3 = hilbert_dimension(spec, 3)?;
    let a4 = hilbert_dimension(spec, 4)?;
    claims.push(Claim::new(
        "deg3.dim-A3",
        "dim A_3 = 84 - 8",
        "dim-A3",
        Derived,
        eq(76usize),
        a3,
        hilbert_certificate(spec, 3, a3)?,
    ));
    claims.push(Claim::new(
        "deg3.dim-A4",
        "dim A_4 = 210 - 56",
        "dim-A4",
        Derived,
        eq(154usize),
        a4,
        hilbert_certificate(spec, 4, a4)?,
    ));
    for t in [0usize, 1] {
        let s = syzygy_dimension(spec, t)?;
        claims.push(Claim::new(
            &format!("deg3.syzygies-t{t}"),
            &format!("no syzygies with coefficients of degree {t}"),
            "no-low-degree-syzygies",
            Paper,
            eq(0usize),
            s.dimension,
            hilbert_certificate(spec, t + 3, hilbert_dimension(spec, t + 3)?)?,
        ));
    }

    let step = lefschetz_step(spec, form, 3)?;
    let coker_cert = hilbert_certificate(&setup.restricted, 4, step.coker_dim)?;
    claims.push(Claim::new(
        "deg3.coker",
        "cokernel of xL: A_3 -> A_4",
        "wlp-degree-3-cokernel",
        Paper,
        eq(78usize),
        step.coker_dim,
        coker_cert,
    ));
    claims.push(Claim::new(
        "deg3.kernel",
        "kernel of xL: A_3 -> A_4",
        "wlp-degree-3",
        Paper,
        eq(0usize),
        step.kernel_dim,
        coker_cert,
    ));
    let extension = quotient_dimension_extension(spec, form, 4)?;
    claims.push(Claim::new(
        "deg3.coker-paths-agree",
        "(A/LA)_4 from I+(L) equals (A/LA)_4 after restriction",
        "wlp-degree-3-cokernel",
        Derived,
        eq(true),
        extension == step.coker_dim,
        coker_cert,
    ));
    let direct = multiplication_rank_direct(spec, form, 3)?;
    claims.push(Claim::new(
        "deg3.rank-direct",
        "rank of xL on monomial bases of A_3 and A_4",
        "wlp-degree-3",
        Derived,
        eq(step.rank),
        direct,
        coker_cert,
    ));

    let points = setup.restricted_points();
    let quartics = FatPointSystem::uniform(5, 4, &points, 2, field)?;
    let qd = linear_system_dimension(&quartics)?;
    let q_cert = fat_point_certificate(&qd, 48, 126);
    claims.push(Claim::new(
        "deg3.quartics-expected",
        "126 - 6*8",
        "quartics-eight-double-points",
        Paper,
        eq(78usize),
        qd.expected,
        Proof,
    ));
    claims.push(Claim::new(
        "deg3.quartics-actual",
        "quartics in P^5 singular at 8 general points",
        "quartics-eight-double-points",
        Paper,
        eq(78usize),
        qd.actual,
        q_cert,
    ));
    claims.push(Claim::new(
        "deg3.engines-agree",
        "cokernel equals the quartic system dimension",
        "cone-correspondence",
        Derived,
        eq(true),
        qd.actual == step.coker_dim,
        both(q_cert, coker_cert),
    ));
    claims.push(Claim::new(
        "deg3.ah-exceptional",
        "(n, d, s) = (5, 4, 8) is on the exceptional list",
        "ah-classification",
        Paper,
        eq(false),
        ah_exceptional(5, 4, 8),
        Proof,
    ));

    let steps: Vec<LefschetzStep> = (0..=3).map(|d| lefschetz_step(spec, form, d)).collect::<Result<_>>()?;
    let injective: Vec<usize> = steps.iter().filter(|s| s.injective()).map(|s| s.degree).collect();
    let mut all_proved = true;
    for s in &steps {
        all_proved &= hilbert_certificate(&setup.restricted, s.degree + 1, s.coker_dim)? == Proof;
    }
    let cert = CertificateKind::from_maximal_rank(all_proved);
    claims.push(Claim::new(
        "deg3.injective-degrees",
        "degrees d <= 3 where xL: A_d -> A_{d+1} is injective",
        "injectivity-below-3",
        Paper,
        eq(vec![0usize, 1, 2, 3]),
        injective.clone(),
        cert,
    ));
    let propagated = !steps[3].injective() || injective.len() == 4;
    claims.push(Claim::new(
        "deg3.injectivity-propagates",
        "injective at 3 implies injective at 0, 1, 2",
        "injectivity-below-3",
        Trivial,
        eq(true),
        propagated,
        cert,
    ));
    Ok(claims)
}

/// Claims behind the WLP in degree 3.
pub fn degree3_report(seed: u64, field: PrimeField, trials: u64) -> Result<ScenarioReport> {
    Ok(ScenarioReport {
        name: "degree3".into(),
        seed,
        prime: field.modulus() as u64,
        claims: with_reseeds(seed, trials, |s| degree3_claims(s, field))?,
    })
}

/// Kernel dimension of `×L : A₅ → A₆` observed for the seeded instances; a regression value.
pub const DEGREE5_KERNEL_PIN: usize = 1;
/// Cokernel dimension of `×L : A₅ → A₆` observed for the seeded instances; a regression value.
pub const DEGREE5_COKER_PIN: usize = 43;
/// Syzygies of the eight cubes with cubic coefficients.
pub const SYZYGY_T3_PIN: usize = 28;

fn degree5_claims(seed: u64, field: PrimeField, trials: u64) -> Result<Vec<Claim>> {
    use CertificateKind::{Evidence, Proof};
    use Provenance::{Derived, Paper};
    let setup = EightCubes::new(seed, field)?;
    let (spec, form) = (&setup.spec, &setup.form);
    let mut claims = Vec::new();

    let profile = wlp_profile(spec, form, DEFAULT_CAP)?;
    let hf: &HilbertFunction = &profile.hilbert;
    let a5 = hf.get(5).unwrap_or(0);
    claims.push(Claim::new(
        "deg5.dim-A5",
        "dim A_5",
        "dim-A5",
        Paper,
        eq(238usize),
        a5,
        hilbert_certificate(spec, 5, a5)?,
    ));

    let s2 = syzygy_dimension(spec, 2)?;
    claims.push(Claim::new(
        "deg5.syzygies-t2",
        "no syzygies with quadric coefficients",
        "no-quadric-syzygies",
        Paper,
        eq(0usize),
        s2.dimension,
        hilbert_certificate(spec, 5, a5)?,
    ));
    let s3 = syzygy_dimension(spec, 3)?;
    let a6 = hf.get(6).unwrap_or(0);
    let a6_cert = hilbert_certificate(spec, 6, a6)?;
    claims.push(Claim::new(
        "deg5.syzygies-t3-lower",
        "cubic-coefficient syzygies are at least C(8,2)",
        "koszul-bound",
        Paper,
        Expectation::AtLeast(28),
        s3.dimension,
        Proof,
    ));
    claims.push(Claim::new(
        "deg5.syzygies-t3",
        "cubic-coefficient syzygies (regression pin)",
        "koszul-bound-equality",
        Paper,
        eq(SYZYGY_T3_PIN),
        s3.dimension,
        a6_cert,
    ));
    let kb = koszul_basis(spec, 3)?;
    let verified = if kb.in_kernel && kb.independent { kb.vectors.len() } else { 0 };
    claims.push(Claim::new(
        "deg5.koszul-independent",
        "Koszul relations lie in the kernel and are independent",
        "koszul-relations",
        Paper,
        eq(28usize),
        verified,
        Proof,
    ));
    claims.push(Claim::new(
        "deg5.dim-A6",
        "dim A_6 = 924 - 672 + s",
        "dim-A6",
        Paper,
        eq(252 + s3.dimension),
        a6,
        a6_cert,
    ));

    let step5 = profile.steps.iter().find(|s| s.degree == 5).copied();
    let step5 = step5.ok_or_else(|| domain("profile has no step at degree 5"))?;
    claims.push(Claim::new(
        "deg5.kernel-positive",
        "xL: A_5 -> A_6 is not injective",
        "wlp-fails-degree-5",
        Paper,
        Expectation::AtLeast(1),
        step5.kernel_dim,
        Evidence,
    ));
    claims.push(Claim::new(
        "deg5.kernel",
        "kernel of xL: A_5 -> A_6 (regression pin)",
        "wlp-fails-degree-5",
        Derived,
        eq(DEGREE5_KERNEL_PIN),
        step5.kernel_dim,
        Evidence,
    ));
    claims.push(Claim::new(
        "deg5.coker",
        "cokernel of xL: A_5 -> A_6 (regression pin)",
        "wlp-fails-degree-5",
        Derived,
        eq(DEGREE5_COKER_PIN),
        step5.coker_dim,
        Evidence,
    ));
    claims.push(Claim::new(
        "deg5.failing-degrees",
        "degrees where xL fails maximal rank",
        "wlp-all-degrees",
        Paper,
        eq(vec![5usize]),
        profile.failing_degrees(),
        Evidence,
    ));
    let socle = hf.socle_degree().map_or(-1, |d| d as i64);
    claims.push(Claim::new(
        "deg5.socle-degree",
        "largest degree with A_d != 0",
        "hilbert-function",
        Derived,
        Expectation::Unpinned,
        socle,
        hilbert_certificate(spec, (socle + 1) as usize, 0)?,
    ));

    claims.extend(pencil_claims(seed, field, trials)?);

    let triple = quintic_triple_probe(&setup.restricted_points(), field)?;
    claims.push(Claim::new(
        "deg5.quintic-triple-expected",
        "252 - 21*8",
        "quintics-eight-triple-points",
        Derived,
        eq(84usize),
        triple.expected,
        Proof,
    ));
    claims.push(Claim::new(
        "deg5.quintic-triple-actual",
        "quintics in P^5 with 8 general triple points",
        "quintics-eight-triple-points",
        Derived,
        Expectation::Unpinned,
        triple.actual,
        fat_point_certificate(&triple, 168, 252),
    ));

    for d in 3..=8 {
        let fat = duality_fat_point_dimension(spec, d)?;
        let art = hf.get(d).unwrap_or(0);
        claims.push(Claim::new(
            &format!("deg5.duality-d{d}"),
            &format!("dim A_{d} equals forms of degree {d} with multiplicity {} at the dual points", d - 2),
            "macaulay-duality",
            Derived,
            eq(art),
            fat.actual,
            hilbert_certificate(spec, d, art)?,
        ));
    }
    Ok(claims)
}

/// Claims about the pencil of cubics and the sextics built from it.
pub fn pencil_claims(seed: u64, field: PrimeField, trials: u64) -> Result<Vec<Claim>> {
    use CertificateKind::{Evidence, Proof};
    use Provenance::{Paper, Trivial};
    let mut claims = Vec::new();
    match pencil_scenario(seed, field, trials) {
        Ok(scenario) => {
            let lucky = |mut c: Claim| {
                if scenario.reseeds > 0 && c.passes() {
                    c.verdict = Verdict::UnluckySpecialization;
                }
                c
            };
            claims.push(lucky(Claim::new(
                "pencil.dim-nine",
                "cubics in P^5 singular at 9 general points",
                "pencil-of-cubics",
                Paper,
                eq(2usize),
                scenario.dim_nine,
                Proof,
            )));
            claims.push(lucky(Claim::new(
                "pencil.dim-eight",
                "cubics in P^5 singular at 8 of them",
                "eight-cubics",
                Paper,
                eq(8usize),
                scenario.dim_eight,
                Proof,
            )));
            claims.push(lucky(Claim::new(
                "pencil.contained",
                "the pencil lies in the eight-point system",
                "pencil-contained",
                Paper,
                eq(true),
                scenario.pencil_contained,
                Proof,
            )));
            claims.push(lucky(Claim::new(
                "pencil.conditions",
                "every cubic satisfies its double-point conditions",
                "pencil-of-cubics",
                Trivial,
                eq(true),
                scenario.conditions_verified,
                Proof,
            )));
            let span = quadruple_product_span(&scenario, field)?;
            claims.push(lucky(Claim::new(
                "pencil.products-span",
                "span of C1*Ci and C2*Cj",
                "fifteen-sextics",
                Paper,
                eq(15usize),
                span.span,
                Proof,
            )));
            claims.push(lucky(Claim::new(
                "pencil.products-vanish",
                "all 15 products have the 8 points as quadruple points",
                "fifteen-sextics",
                Paper,
                eq(true),
                span.vanish_at_eight,
                Proof,
            )));
            claims.push(Claim::new(
                "pencil.sextics-expected",
                "462 - 56*8",
                "sextics-expected-14",
                Paper,
                eq(14usize),
                span.expected_dimension,
                Proof,
            ));
            claims.push(lucky(Claim::new(
                "pencil.products-exceed-expected",
                "product span exceeds the expected dimension",
                "fifteen-sextics",
                Paper,
                eq(true),
                span.span > span.expected_dimension,
                Proof,
            )));
            claims.push(lucky(Claim::new(
                "pencil.nine-point-span",
                "span of C1^2, C1*C2, C2^2",
                "nine-quadruple-points",
                Trivial,
                eq(3usize),
                span.nine_point_span,
                Proof,
            )));
            claims.push(lucky(Claim::new(
                "pencil.nine-point-vanish",
                "C1^2, C1*C2, C2^2 have all 9 points as quadruple points",
                "nine-quadruple-points",
                Paper,
                eq(true),
                span.vanish_at_nine,
                Proof,
            )));
            claims.push(Claim::new(
                "pencil.nine-point-expected",
                "unclamped 462 - 56*9",
                "nine-quadruple-points",
                Paper,
                eq(-42i64),
                span.nine_point_raw_expected,
                Proof,
            ));
        }
        Err(e) => {
            claims.push(Claim::new(
                "pencil.dim-nine",
                &format!("pencil scenario failed: {e}"),
                "pencil-of-cubics",
                Paper,
                eq(2usize),
                -1i64,
                Evidence,
            ));
        }
    }
    Ok(claims)
}

/// Claims behind the failure of the WLP in degree 5.
pub fn degree5_report(seed: u64, field: PrimeField, trials: u64) -> Result<ScenarioReport> {
    Ok(ScenarioReport {
        name: "degree5".into(),
        seed,
        prime: field.modulus() as u64,
        claims: with_reseeds(seed, trials, |s| degree5_claims(s, field, trials))?,
    })
}

/// Quintics in `P⁵` with triple points at the given eight points.
pub fn quintic_triple_probe(points: &[ProjectivePoint], field: PrimeField) -> Result<SystemDimension> {
    linear_system_dimension(&FatPointSystem::uniform(5, 5, points, 3, field)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionProbe {
    pub seed: u64,
    /// `dim (A/LA)₆` from `I + (L)` in seven variables.
    pub coker_extension: usize,
    /// `dim (A/LA)₆` from the restricted ideal in six variables.
    pub coker_restriction: usize,
    /// Syzygies of the seven-variable generators with cubic coefficients.
    pub syzygies: usize,
    /// The same for the restricted generators.
    pub syzygies_restricted: usize,
    pub koszul_restricted: usize,
    pub koszul_restricted_independent: bool,
    /// Sextics in `P⁵` with quadruple points at the restricted dual points.
    pub fatpoint_sextic_dim: usize,
    /// `coker − (s + 15)`.
    pub residual_syzygies_plus_products: i64,
    /// `coker − (14 + s′)`.
    pub residual_expected_plus_restricted_syzygies: i64,
    /// `fatpoint_sextic_dim − coker`.
    pub residual_fatpoint_minus_coker: i64,
}

/// Computes the cokernel of `×L : A₅ → A₆` and the quantities it might
/// decompose into, and reports the residuals without judging them.
pub fn coker_decomposition_probe(seed: u64, field: PrimeField) -> Result<DecompositionProbe> {
    let setup = EightCubes::new(seed, field)?;
    let coker_extension = quotient_dimension_extension(&setup.spec, &setup.form, 6)?;
    let coker_restriction = hilbert_dimension(&setup.restricted, 6)?;
    let syzygies = syzygy_dimension(&setup.spec, 3)?.dimension;
    let syzygies_restricted = syzygy_dimension(&setup.restricted, 3)?.dimension;
    let kb = koszul_basis(&setup.restricted, 3)?;
    let fat = linear_system_dimension(&FatPointSystem::uniform(5, 6, &setup.restricted_points(), 4, field)?)?;
    let coker = coker_restriction as i64;
    Ok(DecompositionProbe {
        seed,
        coker_extension,
        coker_restriction,
        syzygies,
        syzygies_restricted,
        koszul_restricted: kb.vectors.len(),
        koszul_restricted_independent: kb.in_kernel && kb.independent,
        fatpoint_sextic_dim: fat.actual,
        residual_syzygies_plus_products: coker - (syzygies as i64 + 15),
        residual_expected_plus_restricted_syzygies: coker - (14 + syzygies_restricted as i64),
        residual_fatpoint_minus_coker: fat.actual as i64 - coker,
    })
}

impl DecompositionProbe {
    /// All quantities as unpinned claims, except the two-path agreement.
    pub fn claims(&self) -> Vec<Claim> {
        use CertificateKind::Evidence;
        use Provenance::{Derived, Trivial};
        let rec = |id: &str, desc: &str, v: i64| {
            Claim::new(id, desc, "cokernel-decomposition", Derived, Expectation::Unpinned, v, Evidence)
        };
        vec![
            Claim::new(
                "probe.coker-paths-agree",
                "(A/LA)_6 from I+(L) equals (A/LA)_6 after restriction",
                "cokernel-decomposition",
                Derived,
                eq(true),
                self.coker_extension == self.coker_restriction,
                Evidence,
            ),
            rec("probe.coker", "dim (A/LA)_6", self.coker_restriction as i64),
            rec("probe.syzygies", "s: syzygies in 7 variables, cubic coefficients", self.syzygies as i64),
            rec(
                "probe.syzygies-restricted",
                "s': syzygies after restriction, cubic coefficients",
                self.syzygies_restricted as i64,
            ),
            Claim::new(
                "probe.koszul-restricted",
                "independent Koszul relations after restriction",
                "cokernel-decomposition",
                Trivial,
                Expectation::AtLeast(28),
                if self.koszul_restricted_independent { self.koszul_restricted as i64 } else { 0 },
                CertificateKind::Proof,
            ),
            rec("probe.fatpoint-sextics", "sextics in P^5 with 8 quadruple points", self.fatpoint_sextic_dim as i64),
            rec("probe.residual-s-plus-15", "coker - (s + 15)", self.residual_syzygies_plus_products),
            rec(
                "probe.residual-14-plus-s-restricted",
                "coker - (14 + s')",
                self.residual_expected_plus_restricted_syzygies,
            ),
            rec("probe.residual-fatpoint-minus-coker", "fatpoint sextics - coker", self.residual_fatpoint_minus_coker),
        ]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AhCase {
    pub n: usize,
    pub d: usize,
    pub s: usize,
    pub expected: usize,
    pub actual: usize,
    pub defect: usize,
    pub exceptional: bool,
}

/// Degree-`d` forms on `P^n` singular at `s` random points, for every
/// `1 ≤ n ≤ max_n`, `d` in `degrees` and `1 ≤ s ≤ max_s`.
pub fn ah_sweep(max_n: usize, degrees: &[usize], max_s: usize, seed: u64, field: PrimeField) -> Result<Vec<AhCase>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let points = random_points(n, max_s, seed, &field);
        for &d in degrees {
            for s in 1..=max_s {
                let dim = linear_system_dimension(&FatPointSystem::uniform(n, d, &points[..s], 2, field)?)?;
                out.push(AhCase {
                    n,
                    d,
                    s,
                    expected: dim.expected,
                    actual: dim.actual,
                    defect: dim.defect,
                    exceptional: ah_exceptional(n, d, s),
                });
            }
        }
    }
    Ok(out)
}

/// One claim per sweep case: no defect off the exceptional list, a positive
/// defect on it, and defect exactly one for the four sporadic cases.
pub fn ah_claims(cases: &[AhCase]) -> Vec<Claim> {
    cases
        .iter()
        .map(|c| {
            let expected = if !c.exceptional {
                eq(0usize)
            } else if c.d == 2 {
                Expectation::AtLeast(1)
            } else {
                eq(1usize)
            };
            let cert = CertificateKind::from_maximal_rank(c.defect == 0);
            Claim::new(
                &format!("ah.n{}.d{}.s{}", c.n, c.d, c.s),
                &format!("defect of degree {} forms on P^{} singular at {} points", c.d, c.n, c.s),
                "ah-classification",
                Provenance::Paper,
                expected,
                c.defect,
                cert,
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> PrimeField {
        PrimeField::default()
    }

    #[test]
    fn pencil_on_nine_points() {
        let sc = pencil_scenario(0, f(), DEFAULT_TRIALS).unwrap();
        assert_eq!((sc.dim_nine, sc.dim_eight), (2, 8));
        assert!(sc.pencil_contained && sc.conditions_verified);
        assert_eq!(sc.eight_basis[..2], sc.pencil[..]);
        let span = quadruple_product_span(&sc, f()).unwrap();
        assert_eq!(span.products, 15);
        assert_eq!(span.span, 15);
        assert_eq!(span.expected_dimension, 14);
        assert!(span.vanish_at_eight && span.vanish_at_nine);
        assert_eq!(span.nine_point_span, 3);
        assert_eq!(span.nine_point_raw_expected, -42);
    }

    #[test]
    fn pencil_rejects_special_points() {
        let mut pts = random_points(5, 9, 3, &f());
        pts[8] = pts[0].scaled(5, &f()).unwrap();
        assert!(pencil_scenario_from_points(&pts, f()).is_err());
        assert!(pencil_scenario_from_points(&pts[..8], f()).is_err());
    }

    #[test]
    fn duality_on_small_instances() {
        let field = f();
        for seed in 0..4 {
            let spec = PowerIdealSpec::random(4, 5, 2, seed, field).unwrap();
            for d in 0..=5 {
                let c = duality_check(&spec, d).unwrap();
                assert!(c.holds, "seed {seed} degree {d}: {c:?}");
            }
        }
    }

    #[test]
    fn certificate_follows_maximal_rank() {
        let field = f();
        let spec = PowerIdealSpec::random(3, 4, 2, 1, field).unwrap();
        for d in 0..=4 {
            let dim = hilbert_dimension(&spec, d).unwrap();
            assert_eq!(hilbert_certificate(&spec, d, dim).unwrap(), CertificateKind::Proof, "degree {d}");
        }
        assert_eq!(hilbert_certificate(&spec, 2, 3).unwrap(), CertificateKind::Evidence);
    }

    #[test]
    fn reseeding_marks_unlucky_claims() {
        let claims = with_reseeds(7, 3, |s| {
            let v = if s == 7 { 0usize } else { 1 };
            Ok(vec![Claim::new("x", "x", "x", Provenance::Derived, eq(1usize), v, CertificateKind::Proof)])
        })
        .unwrap();
        assert_eq!(claims[0].verdict, Verdict::UnluckySpecialization);
        let claims = with_reseeds(7, 3, |_| {
            Ok(vec![Claim::new("x", "x", "x", Provenance::Derived, eq(1usize), 0usize, CertificateKind::Proof)])
        })
        .unwrap();
        assert_eq!(claims[0].verdict, Verdict::Fail);
    }

    #[test]
    fn ah_sweep_matches_the_exceptional_list() {
        let cases = ah_sweep(5, &[2, 3, 4], 20, 0, f()).unwrap();
        assert_eq!(cases.len(), 5 * 3 * 20);
        for c in &cases {
            assert_eq!(c.defect > 0, c.exceptional, "{c:?}");
        }
        for c in ah_claims(&cases) {
            assert!(c.passes(), "{c:?}");
        }
    }

    #[test]
    fn degree3_claims_hold() {
        let r = degree3_report(0, f(), DEFAULT_TRIALS).unwrap();
        for c in &r.claims {
            assert!(c.passes(), "{c:?}");
        }
        assert_eq!(r.claim("deg3.coker").unwrap().certificate_kind, CertificateKind::Proof);
    }
}
