//! Property suites behind the `verify` command. Each property returns the
//! first counterexample it meets, so a failing run points at one concrete
//! `(n, k)` or parameter choice.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{int, qpi2_sign, rat, HarmonicCache, PiQuadratic, Rational, Sign};
use crate::asymptotics::{analytic_lower_bound_check, asymptote_residual, monotonicity_certificate, sk_enclosure};
use crate::error::{Error, Result};
use crate::invariants::{
    closed_lambda_sq, core_eigenvalues, hs_identities, pairing_cases_zw2, pf_coefficients_zw2, sigma_closed,
    sigma_partial, sigma_tail_bound, sigma_term_closed, squared_pf_sum, PairingEngine, Zw2Polynomials,
};
use crate::submodule::{Generator, Submodule};
use crate::symbol::{defect_basis_unnormalized, h2_inner, HomogeneousSymbol};
use crate::toeplitz::{
    closed_cofactor_first_row_corner, closed_cofactor_last_row, closed_dn, cofactor_exact, det_exact, det_sequence,
    fh_determinant, fh_exponent_estimate, fh_toeplitz, fh_truncated_determinants, first_row_cofactors,
    last_row_cofactors, FhParams,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Linalg,
    Invariants,
    Asymptotics,
    Fh,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::All, Suite::Linalg, Suite::Invariants, Suite::Asymptotics, Suite::Fh];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Linalg => "linalg",
            Suite::Invariants => "invariants",
            Suite::Asymptotics => "asymptotics",
            Suite::Fh => "fh",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|suite| suite.name() == s).ok_or_else(|| {
            Error::Domain(format!("unknown suite {s:?}; expected all, linalg, invariants, asymptotics or fh"))
        })
    }
}

/// Deliberate corruptions used to check that the suites can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Adds 1 to the constant coefficient of `P(k)`.
    CorruptPCoefficient,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Range of the exact monotonicity certificate.
    pub k_max: u64,
    pub fault: Option<Fault>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { k_max: 500, fault: None }
    }
}

impl VerifyOptions {
    fn polynomials(&self) -> Zw2Polynomials {
        let mut polys = Zw2Polynomials::standard();
        if self.fault == Some(Fault::CorruptPCoefficient) {
            polys.p[0] += int(1);
        }
        polys
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub suite: Suite,
    pub property: &'static str,
    pub status: Status,
    pub first_counterexample: Option<String>,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// `Ok(None)` when the property holds, `Ok(Some(description))` at the first
/// counterexample.
type Outcome = Result<Option<String>>;
type Check = fn(&VerifyOptions) -> Outcome;

const PROPERTIES: &[(Suite, &str, Check)] = &[
    (Suite::Linalg, "determinant-closed-form", determinant_closed_form),
    (Suite::Linalg, "cofactor-closed-form", cofactor_closed_form),
    (Suite::Linalg, "f-recurrence", f_recurrence),
    (Suite::Linalg, "pairing-oracle", pairing_oracle),
    (Suite::Linalg, "defect-space", defect_space),
    (Suite::Invariants, "closed-form-values", closed_form_values),
    (Suite::Invariants, "series-closed-form", series_closed_form),
    (Suite::Invariants, "core-identities", core_identities),
    (Suite::Fh, "fh-exact", fh_exact),
    (Suite::Fh, "fh-vanishing", fh_vanishing),
    (Suite::Fh, "fh-exponent", fh_exponent),
    (Suite::Asymptotics, "sk-enclosure", sk_enclosures),
    (Suite::Asymptotics, "monotonicity-certificate", monotonicity),
    (Suite::Asymptotics, "analytic-bound", analytic_bound),
    (Suite::Asymptotics, "asymptote-residual", residual_bounds),
];

/// Property names of a suite, in run order.
pub fn properties(suite: Suite) -> Vec<&'static str> {
    PROPERTIES.iter().filter(|(s, _, _)| suite == Suite::All || *s == suite).map(|(_, name, _)| *name).collect()
}

/// Runs one property by name.
pub fn run_property(name: &str, opts: &VerifyOptions) -> Option<PropertyResult> {
    PROPERTIES.iter().find(|(_, n, _)| *n == name).map(|(suite, name, check)| evaluate(*suite, name, *check, opts))
}

/// Runs every property of `suite`. Results come back in table order.
pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Vec<PropertyResult> {
    PROPERTIES
        .par_iter()
        .filter(|(s, _, _)| suite == Suite::All || *s == suite)
        .map(|(s, name, check)| evaluate(*s, name, *check, opts))
        .collect()
}

fn evaluate(suite: Suite, property: &'static str, check: Check, opts: &VerifyOptions) -> PropertyResult {
    let first_counterexample = match check(opts) {
        Ok(None) => None,
        Ok(Some(cx)) => Some(cx),
        Err(e) => Some(format!("error: {e}")),
    };
    let status = if first_counterexample.is_none() { Status::Pass } else { Status::Fail };
    PropertyResult { suite, property, status, first_counterexample }
}

/// `0 ≤ value − lo ≤ width`, decided exactly.
fn within(value: &PiQuadratic, lo: &Rational, width: &Rational) -> Result<bool> {
    let gap = value.clone() + (-lo.clone());
    let slack = PiQuadratic::rational(width.clone()) - gap.clone();
    Ok(qpi2_sign(&gap)? != Sign::Negative && qpi2_sign(&slack)? != Sign::Negative)
}

fn determinant_closed_form(_: &VerifyOptions) -> Outcome {
    const N: usize = 200;
    for sub in Submodule::ALL {
        let p = sub.symbol();
        let seq = det_sequence(&p, N);
        if let Some(n) = (0..=N).find(|&n| *seq.get(n) != closed_dn(sub, n)) {
            return Ok(Some(format!("{sub}: banded D_{n} = {}", seq.get(n))));
        }
        let bad = (1..=N).into_par_iter().find_first(|&n| match det_exact(p.gram_matrix(n - 1).matrix()) {
            Ok(d) => d != closed_dn(sub, n),
            Err(_) => true,
        });
        if let Some(n) = bad {
            return Ok(Some(format!("{sub}: Bareiss D_{n} differs from the closed form")));
        }
    }
    Ok(None)
}

fn cofactor_closed_form(_: &VerifyOptions) -> Outcome {
    const N: usize = 40;
    for sub in Submodule::ALL {
        let p = sub.symbol();
        let bad =
            (0..=N).into_par_iter().map(|n| cofactor_rows_agree(sub, &p, n)).find_first(|r| !matches!(r, Ok(None)));
        if let Some(found) = bad {
            return found;
        }
    }
    Ok(None)
}

fn cofactor_rows_agree(sub: Submodule, p: &HomogeneousSymbol, n: usize) -> Outcome {
    let last = last_row_cofactors(p, n)?;
    let first = first_row_cofactors(p, n)?;
    let m = p.gram_matrix(n).into_matrix();
    for j in 0..=n {
        if last.values[j] != cofactor_exact(&m, n, j)? {
            return Ok(Some(format!("{sub}: A_{{{n},{j}}} differs from its minor")));
        }
        if first.values[j] != cofactor_exact(&m, 0, j)? {
            return Ok(Some(format!("{sub}: A_{{0,{j}}} of A^{n} differs from its minor")));
        }
        if last.values[j] != closed_cofactor_last_row(sub, n, j)? {
            return Ok(Some(format!("{sub}: A_{{{n},{j}}} differs from the closed form")));
        }
    }
    if first.values[n] != closed_cofactor_first_row_corner(sub, n) {
        return Ok(Some(format!("{sub}: corner A_{{0,{n}}} differs from the closed form")));
    }
    Ok(None)
}

/// `F_n = −A_{n,n−1}^n` for `(z−w)²`.
fn f_recurrence(_: &VerifyOptions) -> Outcome {
    const N: usize = 60;
    let sub = Submodule::Zw2;
    let engine = PairingEngine::new(&sub.symbol(), N)?;
    let f: Vec<Rational> =
        (0..=N).map(|n| if n == 0 { Rational::zero() } else { -&engine.last_row(n)[n - 1] }).collect();
    for (n, want) in [(1, -4), (2, -20), (3, -60)] {
        if f[n] != int(want) {
            return Ok(Some(format!("F_{n} = {}, expected {want}", f[n])));
        }
    }
    for n in 1..=N {
        let nn = int(n as i64);
        let closed = -(&nn * (&nn + int(1)) * (&nn + int(2)) * (&nn + int(3))) / int(6);
        if f[n] != closed {
            return Ok(Some(format!("F_{n} = {} differs from −n(n+1)(n+2)(n+3)/6", f[n])));
        }
        if n >= 3 && f[n] != int(-4) * (closed_dn(sub, n - 1) - closed_dn(sub, n - 2)) + &f[n - 2] {
            return Ok(Some(format!("F_{n} breaks the two-step recurrence")));
        }
    }
    Ok(None)
}

fn pairing_oracle(_: &VerifyOptions) -> Outcome {
    const N: usize = 25;
    for sub in Submodule::ALL {
        let engine = PairingEngine::new(&sub.symbol(), N)?;
        let vanish_from = |n: usize| match sub {
            Submodule::Zw2 => n + 3,
            Submodule::Zw => n + 2,
        };
        for n in 0..=N {
            for k in 0..=N {
                let generic = engine.pairing(n, k);
                if sub == Submodule::Zw2 && generic.abs() != pairing_cases_zw2(n, k).abs() {
                    return Ok(Some(format!("{sub} n={n} k={k}: generic and case table differ")));
                }
                if k >= vanish_from(n) {
                    if !generic.is_zero() {
                        return Ok(Some(format!("{sub} n={n} k={k}: pairing should vanish")));
                    }
                } else if k >= 1 && generic.abs() != sigma_term_closed(sub, k, n)?.abs() {
                    return Ok(Some(format!("{sub} n={n} k={k}: generic and closed term differ")));
                }
            }
        }
    }
    Ok(None)
}

fn defect_space(_: &VerifyOptions) -> Outcome {
    let symbols = [Submodule::Zw2.symbol(), Submodule::Zw.symbol(), HomogeneousSymbol::from_integers(&[2, -1, 3])?];
    for p in &symbols {
        let base = p.to_poly();
        for n in 0..=12 {
            let first = first_row_cofactors(p, n)?;
            let last = last_row_cofactors(p, n)?;
            let (phi, psi) = defect_basis_unnormalized(p, n, &first.values, &last.values)?;
            let norm = first.det_n() * &first.det_next;
            if h2_inner(&phi, &phi) != norm || h2_inner(&psi, &psi) != norm {
                return Ok(Some(format!("p = {p}, n = {n}: squared norm is not D_n·D_(n+1)")));
            }
            for a in 0..n as u32 {
                let b = n as u32 - 1 - a;
                if !h2_inner(&phi, &base.shift(a + 1, b)).is_zero() {
                    return Ok(Some(format!("p = {p}, n = {n}: Φ meets z·p·z^{a}w^{b}")));
                }
                if !h2_inner(&psi, &base.shift(a, b + 1)).is_zero() {
                    return Ok(Some(format!("p = {p}, n = {n}: Ψ meets w·p·z^{a}w^{b}")));
                }
            }
        }
    }
    Ok(None)
}

fn closed_form_values(_: &VerifyOptions) -> Outcome {
    type Ratios = ((i64, i64), (i64, i64));
    let expected: [(Submodule, [Ratios; 4]); 2] = [
        (Submodule::Zw2, [((2, 3), (-4, 1)), ((2, 3), (-5, 1)), ((178, 3), (-585, 1)), ((2906, 3), (-9560, 1))]),
        (Submodule::Zw, [((1, 6), (0, 1)), ((1, 6), (-1, 1)), ((5, 6), (-8, 1)), ((13, 6), (-85, 4))]),
    ];
    for (sub, values) in expected {
        for (k, (a, b)) in values.into_iter().enumerate() {
            let got = sigma_closed(sub, k as u64);
            if got != PiQuadratic::from_ratios(a, b) {
                return Ok(Some(format!("{sub} Σ_{k} = {got}")));
            }
        }
    }
    Ok(None)
}

fn series_closed_form(opts: &VerifyOptions) -> Outcome {
    const N: usize = 1000;
    let polys = opts.polynomials();
    let cache = HarmonicCache::new(40);
    for k in 3..=40u64 {
        let series = squared_pf_sum(&pf_coefficients_zw2(k)?).scale(&int(4));
        let closed = polys.sigma(k, cache.h2(k - 1));
        if series != closed {
            return Ok(Some(format!("zw2 k = {k}: squared partial fractions give {series}, closed form {closed}")));
        }
    }
    let cases: Vec<(Submodule, usize)> =
        Submodule::ALL.into_iter().flat_map(|s| (0..=20).map(move |k| (s, k))).collect();
    let found = cases
        .into_par_iter()
        .map(|(sub, k)| -> Outcome {
            let closed = match (sub, k) {
                (Submodule::Zw2, 1..) => polys.sigma(k as u64, cache.h2(k as u64 - 1)),
                _ => sigma_closed(sub, k as u64),
            };
            let partial = sigma_partial(&Generator::Named(sub), k, N)?;
            let tail = sigma_tail_bound(sub, k, N)?;
            if tail > rat(1, 100) {
                return Ok(Some(format!("{sub} k = {k}: tail bound {tail} exceeds 1/100")));
            }
            if !within(&closed, &partial, &tail)? {
                return Ok(Some(format!("{sub} k = {k}: closed form outside partial sum + [0, tail] at N = {N}")));
            }
            Ok(None)
        })
        .find_first(|r| !matches!(r, Ok(None)));
    found.unwrap_or(Ok(None))
}

fn core_identities(_: &VerifyOptions) -> Outcome {
    for sub in Submodule::ALL {
        let spectrum = core_eigenvalues(&Generator::Symbol(sub.symbol()), 100)?;
        if let Some(row) = spectrum.pairs.iter().find(|r| r.lambda_sq != closed_lambda_sq(sub, r.n)) {
            return Ok(Some(format!("{sub} n = {}: λ² = {}", row.n, row.lambda_sq)));
        }
        let (s0, s1, hs) = hs_identities(sub)?;
        if &s0 - &s1 != PiQuadratic::rational(int(1)) {
            return Ok(Some(format!("{sub}: Σ_0 − Σ_1 = {}", &s0 - &s1)));
        }
        let want = match sub {
            Submodule::Zw2 => PiQuadratic::from_ratios((4, 3), (-9, 1)),
            Submodule::Zw => PiQuadratic::from_ratios((1, 3), (-1, 1)),
        };
        if hs != want {
            return Ok(Some(format!("{sub}: ‖C‖²_HS = {hs}")));
        }
    }
    Ok(None)
}

fn fh_exact(_: &VerifyOptions) -> Outcome {
    const N: usize = 60;
    const BAREISS_N: usize = 20;
    for alpha in 0..=3u32 {
        for beta in -(alpha as i64)..=alpha as i64 {
            let params = FhParams::new(alpha, beta);
            let truncated = fh_truncated_determinants(params, N);
            for (n, truncated) in truncated.iter().enumerate().skip(1) {
                let closed = fh_determinant(params, n)?;
                if *truncated != closed {
                    return Ok(Some(format!("(α, β) = ({alpha}, {beta}), n = {n}: {truncated} vs {closed}")));
                }
                if n <= BAREISS_N && det_exact(&fh_toeplitz(params, n))? != closed {
                    return Ok(Some(format!("(α, β) = ({alpha}, {beta}), n = {n}: Bareiss differs")));
                }
            }
        }
    }
    Ok(None)
}

fn fh_vanishing(_: &VerifyOptions) -> Outcome {
    let params = FhParams::new(1, 2);
    let truncated = fh_truncated_determinants(params, 20);
    for (n, truncated) in truncated.iter().enumerate().skip(1) {
        if !truncated.is_zero() || !fh_determinant(params, n)?.is_zero() {
            return Ok(Some(format!("(α, β) = (1, 2), n = {n}: determinant is nonzero")));
        }
    }
    Ok(None)
}

fn fh_exponent(_: &VerifyOptions) -> Outcome {
    for (beta, want) in [(0, 4.0), (1, 3.0)] {
        let got = fh_exponent_estimate(FhParams::new(2, beta), 50, 100)?;
        if (got - want).abs() > 0.1 {
            return Ok(Some(format!("(α, β) = (2, {beta}): exponent {got:.4}, expected {want}")));
        }
    }
    Ok(None)
}

fn sk_enclosures(opts: &VerifyOptions) -> Outcome {
    let k_max = opts.k_max.max(1);
    let cache = HarmonicCache::new(k_max);
    for k in 1..=k_max {
        let enc = sk_enclosure(k, 3)?;
        let s_k = PiQuadratic::zeta2_tail(cache.h2(k - 1));
        if !within(&s_k, enc.interval.lo(), &enc.interval.width())? {
            return Ok(Some(format!("k = {k}: S_k escapes {}", enc.interval)));
        }
    }
    Ok(None)
}

fn monotonicity(opts: &VerifyOptions) -> Outcome {
    for sub in Submodule::ALL {
        match monotonicity_certificate(sub, opts.k_max.max(1)) {
            Ok(cert) if cert.is_valid() => {}
            Ok(_) => return Ok(Some(format!("{sub}: certificate is incomplete"))),
            Err(Error::CertificateFailure { first_k }) => {
                return Ok(Some(format!("{sub}: Δ_{first_k} is not positive")))
            }
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

fn analytic_bound(_: &VerifyOptions) -> Outcome {
    for k in 3..=1_000_000u64 {
        if !analytic_lower_bound_check(k)? {
            return Ok(Some(format!("k = {k}")));
        }
    }
    Ok(None)
}

fn residual_bounds(_: &VerifyOptions) -> Outcome {
    if let Some(row) = asymptote_residual(Submodule::Zw2, 10, 200)?.into_iter().find(|r| r.residual_k3.abs() > 10.0) {
        return Ok(Some(format!("zw2 k = {}: residual·k³ = {}", row.k, row.residual_k3)));
    }
    let zw = asymptote_residual(Submodule::Zw, 100, 200)?;
    if let Some(row) = zw.into_iter().find(|r| !(0.05..=0.15).contains(&r.residual_k3)) {
        return Ok(Some(format!("zw k = {}: residual·k³ = {}", row.k, row.residual_k3)));
    }
    Ok(None)
}
