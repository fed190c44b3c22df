//! L(s, χ) by four independent routes, each carrying a rigorous truncation
//! bound: ordered series summation, Euler product, the s = 1 integral
//! representation, and the finite closed form for prime moduli. Also the
//! pole scan of the principal series and the branch-tracked logarithm.

use crate::census::{primes_upto, shared_primes};
use crate::characters::Character;
use crate::error::{Error, Result};
use crate::index::ModulusFactorization;
use crate::quadrature;
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

/// Evaluation route that produced an LValue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Series,
    EulerProduct,
    Integral,
    ClosedForm,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::EulerProduct => "euler-product",
            Method::Integral => "integral",
            Method::ClosedForm => "closed-form",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A computed L value with a rigorous bound on the truncation error
/// (rounding excluded) and the method that produced it.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct LValue {
    pub value: Complex64,
    pub error_bound: f64,
    pub method: Method,
    pub s: f64,
}

/// Inner h-loop cutoff shared by the log expansion and the progression
/// prime sum: terms below this are dropped and covered by the bounds.
pub(crate) const H_TRUNCATION_EPS: f64 = 1e-16;

fn term_power(s: f64) -> impl Fn(u64) -> f64 {
    // powi is much cheaper than powf and s is almost always 1 or 2 here
    let int_s = if s.fract() == 0.0 && s.abs() <= 8.0 {
        Some(s as i32)
    } else {
        None
    };
    move |n: u64| match int_s {
        Some(e) => (n as f64).powi(-e),
        None => (n as f64).powf(-s),
    }
}

/// Σ_{n ≤ N} χ(n)·n^{−s}, summed in increasing n (the ordering is part of
/// the contract: the series is only conditionally convergent at s = 1).
///
/// Truncation bound: the coprime zeta tail for s > 1, and the Abel bound
/// 2k·N^{−s} (character partial sums never exceed the period) for
/// nonprincipal χ at s ≥ 1.
pub fn dirichlet_series(chi: &Character, s: f64, n_cutoff: u64) -> Result<LValue> {
    let k = chi.k();
    let principal = chi.is_principal();
    if principal && s <= 1.0 {
        return Err(Error::DivergentSeries(s));
    }
    if s < 1.0 {
        return Err(Error::Domain(format!(
            "series evaluation needs s >= 1, got {s}"
        )));
    }
    if n_cutoff < k {
        return Err(Error::InvalidArgument(format!(
            "need N >= k, got N = {n_cutoff}, k = {k}"
        )));
    }

    let pow = term_power(s);
    // Kahan-compensated, componentwise.
    let (mut re, mut im) = (0.0f64, 0.0f64);
    let (mut c_re, mut c_im) = (0.0f64, 0.0f64);
    for n in 1..=n_cutoff {
        let v = chi.eval(n);
        if v.re == 0.0 && v.im == 0.0 {
            continue;
        }
        let w = pow(n);
        let y = v.re * w - c_re;
        let t = re + y;
        c_re = (t - re) - y;
        re = t;
        let y = v.im * w - c_im;
        let t = im + y;
        c_im = (t - im) - y;
        im = t;
    }

    let nf = n_cutoff as f64;
    let big_k = chi.modulus().group_order() as f64;
    let zeta_tail = if s > 1.0 {
        (big_k / k as f64) * nf.powf(1.0 - s) / (s - 1.0) + big_k * nf.powf(-s)
    } else {
        f64::INFINITY
    };
    let abel = 2.0 * k as f64 * nf.powf(-s);
    let error_bound = if principal {
        zeta_tail
    } else {
        zeta_tail.min(abel)
    };

    Ok(LValue {
        value: Complex64::new(re, im),
        error_bound,
        method: Method::Series,
        s,
    })
}

/// Π_{q ≤ Q, q ∤ k} (1 − χ(q)·q^{−s})^{−1}; absolutely convergent only for
/// s > 1. The bound exponentiates the log tail over the omitted primes.
pub fn euler_product(chi: &Character, s: f64, q_cutoff: u64) -> Result<LValue> {
    if s <= 1.0 {
        return Err(Error::Domain(format!(
            "the Euler product needs s > 1, got {s}"
        )));
    }
    if q_cutoff < 2 {
        return Err(Error::InvalidArgument(format!(
            "need a prime cutoff Q >= 2, got {q_cutoff}"
        )));
    }
    let k = chi.k();
    let table = shared_primes(q_cutoff);
    let mut value = Complex64::new(1.0, 0.0);
    for &q in primes_upto(&table, q_cutoff) {
        if k.is_multiple_of(q) {
            continue;
        }
        let factor = Complex64::new(1.0, 0.0) - chi.eval(q) * (q as f64).powf(-s);
        value /= factor;
    }
    let qf = q_cutoff as f64;
    let tail_log = (qf.powf(1.0 - s) / (s - 1.0) + qf.powf(-s)) / (1.0 - 2.0f64.powf(-s));
    Ok(LValue {
        value,
        error_bound: value.norm() * tail_log.exp_m1(),
        method: Method::EulerProduct,
        s,
    })
}

/// L(1, χ) for nonprincipal χ as ∫₀¹ P(x)/(1−x^k) dx, after cancelling the
/// shared (1−x) factor exactly: P(1) = Σ χ(n) = 0, so the quotient
/// polynomial has the running partial sums of χ as coefficients and the
/// integrand B(x)/(1+x+⋯+x^{k−1}) is smooth on [0, 1].
pub fn l_one_integral(chi: &Character) -> Result<LValue> {
    if chi.is_principal() {
        return Err(Error::DivergentIntegral);
    }
    let k = chi.k();
    let mut coeffs = Vec::with_capacity((k - 2) as usize);
    let mut running = Complex64::new(0.0, 0.0);
    for n in 1..k - 1 {
        running += chi.eval(n);
        coeffs.push(running);
    }
    let integrand = move |x: f64| {
        let mut num = Complex64::new(0.0, 0.0);
        for b in coeffs.iter().rev() {
            num = num * x + b;
        }
        let mut den = 0.0f64;
        for _ in 0..k {
            den = den * x + 1.0;
        }
        num / den
    };
    let q = quadrature::integrate(integrand, 0.0, 1.0, 1e-10);
    Ok(LValue {
        value: q.value,
        error_bound: q.error_estimate,
        method: Method::Integral,
        s: 1.0,
    })
}

/// L(1, χ) for nonprincipal χ mod an odd prime p, via the finite formula
///
///   L(1, χ) = −(1/p)·f(ζ_p)·Σ_{m=1}^{p−1} conj χ(m)·[log(2 sin(mπ/p))
///             + (π/2)(1 − 2m/p)·i],
///
/// where f(ζ_p) = Σ_g χ(g)·ζ_p^g. Truncation-free, so the bound is zero.
pub fn l_one_closed_form_prime(chi: &Character) -> Result<LValue> {
    let f = chi.modulus();
    let prime_modulus =
        f.two_exponent() == 0 && f.odd_factors().len() == 1 && f.odd_factors()[0].exponent == 1;
    if !prime_modulus {
        return Err(Error::Unsupported(format!(
            "closed form needs an odd prime modulus, got k = {}",
            f.k()
        )));
    }
    if chi.is_principal() {
        return Err(Error::Unsupported(
            "closed form is for nonprincipal characters".into(),
        ));
    }
    let p = f.k();
    let pf = p as f64;
    let mut gauss = Complex64::new(0.0, 0.0);
    for g in 1..p {
        gauss += chi.eval(g) * Complex64::from_polar(1.0, TAU * g as f64 / pf);
    }
    let mut weighted = Complex64::new(0.0, 0.0);
    for m in 1..p {
        let mf = m as f64;
        let kernel = Complex64::new(
            (2.0 * (mf * PI / pf).sin()).ln(),
            FRAC_PI_2 * (1.0 - 2.0 * mf / pf),
        );
        weighted += chi.eval(m).conj() * kernel;
    }
    Ok(LValue {
        value: -gauss * weighted / pf,
        error_bound: 0.0,
        method: Method::ClosedForm,
        s: 1.0,
    })
}

// Euler–Maclaurin zeta with three Bernoulli corrections at N = 64; the
// returned bound is the first omitted term, valid for real s > 1.
fn zeta_em(s: f64) -> (f64, f64) {
    const N: u64 = 64;
    let nf = N as f64;
    let mut sum = 0.0;
    for n in 1..=N {
        sum += (n as f64).powf(-s);
    }
    sum += nf.powf(1.0 - s) / (s - 1.0) - 0.5 * nf.powf(-s);
    let poch = |m: u32| -> f64 { (0..m).map(|j| s + j as f64).product() };
    sum += (1.0 / 6.0) / 2.0 * poch(1) * nf.powf(-s - 1.0);
    sum += (-1.0 / 30.0) / 24.0 * poch(3) * nf.powf(-s - 3.0);
    sum += (1.0 / 42.0) / 720.0 * poch(5) * nf.powf(-s - 5.0);
    let bound = ((1.0 / 30.0) / 40_320.0 * poch(7) * nf.powf(-s - 7.0)).abs();
    (sum, bound)
}

/// Accurate principal-series value L₀(s) = ζ(s)·Π_{p|k}(1 − p^{−s}) for
/// s > 1, with its truncation bound. Direct ordered summation cannot reach
/// pole-scan accuracy (the tail is ~(K/k)·N^{−ρ}/ρ), so the scan leans on
/// this instead.
pub(crate) fn principal_l_accurate(f: &ModulusFactorization, s: f64) -> (f64, f64) {
    let (zeta, zeta_bound) = zeta_em(s);
    let mut factor = 1.0;
    if f.two_exponent() >= 1 {
        factor *= 1.0 - 2.0f64.powf(-s);
    }
    for q in f.odd_factors() {
        factor *= 1.0 - (q.prime as f64).powf(-s);
    }
    (zeta * factor, zeta_bound * factor)
}

/// ρ-grid estimates of the principal-series residue at s = 1.
#[derive(Debug, Clone, serde::Serialize)]
pub struct PoleScanReport {
    pub k: u64,
    /// strictly decreasing toward 0
    pub rho_values: Vec<f64>,
    /// ρ·L₀(1+ρ) per grid point
    pub residue_estimates: Vec<f64>,
    /// linear-fit intercept at ρ = 0
    pub extrapolated_residue: f64,
    /// K/k
    pub expected: f64,
}

/// Default geometric ρ grid, 10^{-1} down to 10^{-3}.
pub fn default_rho_grid() -> Vec<f64> {
    (0..9).map(|j| 10f64.powf(-1.0 - j as f64 / 4.0)).collect()
}

/// Estimate the residue of the principal series at s = 1 by evaluating
/// ρ·L₀(1+ρ) over the grid and extrapolating ρ → 0 with a linear fit.
/// Every grid evaluation keeps its truncation error below ρ·10^{−3}.
pub fn principal_pole_scan(f: &ModulusFactorization, rho_values: &[f64]) -> Result<PoleScanReport> {
    if rho_values.is_empty() {
        return Err(Error::InvalidArgument("empty rho grid".into()));
    }
    if rho_values
        .iter()
        .any(|&r| r.is_nan() || r <= 0.0 || !r.is_finite())
    {
        return Err(Error::InvalidArgument("rho grid must be positive".into()));
    }
    let mut rhos = rho_values.to_vec();
    rhos.sort_by(|a, b| b.partial_cmp(a).unwrap());
    rhos.dedup();

    let estimates: Vec<f64> = rhos
        .iter()
        .map(|&rho| {
            let (l0, bound) = principal_l_accurate(f, 1.0 + rho);
            debug_assert!(bound < rho * 1e-3);
            rho * l0
        })
        .collect();

    let n = rhos.len() as f64;
    let x_mean = rhos.iter().sum::<f64>() / n;
    let y_mean = estimates.iter().sum::<f64>() / n;
    let extrapolated = if rhos.len() == 1 {
        estimates[0]
    } else {
        let sxy: f64 = rhos
            .iter()
            .zip(&estimates)
            .map(|(&x, &y)| (x - x_mean) * (y - y_mean))
            .sum();
        let sxx: f64 = rhos.iter().map(|&x| (x - x_mean).powi(2)).sum();
        let slope = sxy / sxx;
        y_mean - slope * x_mean
    };

    Ok(PoleScanReport {
        k: f.k(),
        rho_values: rhos,
        residue_estimates: estimates,
        extrapolated_residue: extrapolated,
        expected: f.group_order() as f64 / f.k() as f64,
    })
}

fn wrap_to_pi(x: f64) -> f64 {
    x - TAU * (x / TAU).round()
}

const BRANCH_START: f64 = 1.5;
const BRANCH_MIN_STEP: f64 = 1e-6;
const BRANCH_MAX_STEP: f64 = 0.25;

/// Continue the argument of L from s_start (principal value there) to
/// s_target, stepping adaptively and rejecting any step that moves the
/// argument by π/2 or more.
fn track_argument(arg_at: impl Fn(f64) -> Result<f64>, s_start: f64, s_target: f64) -> Result<f64> {
    let mut prev = arg_at(s_start)?;
    let mut v = prev;
    if s_target == s_start {
        return Ok(v);
    }
    let dir = if s_target < s_start { -1.0 } else { 1.0 };
    let mut cur = s_start;
    let mut step = (s_target - s_start).abs().min(BRANCH_MAX_STEP);
    loop {
        let remaining = (s_target - cur).abs();
        let next = if step >= remaining {
            s_target
        } else {
            cur + dir * step
        };
        let arg = arg_at(next)?;
        let delta = wrap_to_pi(arg - prev);
        if delta.abs() >= FRAC_PI_2 {
            step *= 0.5;
            if step < BRANCH_MIN_STEP {
                return Err(Error::BranchTracking { s: cur });
            }
            continue;
        }
        v += delta;
        prev = arg;
        cur = next;
        if cur == s_target {
            return Ok(v);
        }
        step = (step * 2.0).min(BRANCH_MAX_STEP);
    }
}

fn prime_power_log_sum(chi: &Character, s: f64, primes: &[u64]) -> Complex64 {
    let k = chi.k();
    let mut sum = Complex64::new(0.0, 0.0);
    for &q in primes {
        if k.is_multiple_of(q) {
            continue;
        }
        let qs = (q as f64).powf(-s);
        let mut q_pow_mod = q % k;
        let mut weight = qs;
        let mut h = 1u32;
        while weight >= H_TRUNCATION_EPS {
            sum += chi.eval(q_pow_mod) * (weight / h as f64);
            q_pow_mod = q_pow_mod * q % k;
            weight *= qs;
            h += 1;
        }
    }
    sum
}

/// log L(s, χ) = Σ_h (1/h)·Σ_{q ≤ Q} χ(q)^h·q^{−hs} for s > 1, with the
/// imaginary part fixed by continuity: the argument is taken principal at
/// s = 1.5 and tracked to the target in steps small enough that no step
/// moves it by π/2.
pub fn log_l(chi: &Character, s: f64, q_cutoff: u64) -> Result<Complex64> {
    log_l_bounded(chi, s, q_cutoff).map(|(v, _)| v)
}

/// `log_l` plus a rigorous truncation bound (prime tail exponent sum and
/// dropped h terms).
pub fn log_l_bounded(chi: &Character, s: f64, q_cutoff: u64) -> Result<(Complex64, f64)> {
    if s <= 1.0 {
        return Err(Error::Domain(format!("log L needs s > 1, got {s}")));
    }
    let table = shared_primes(q_cutoff);
    let primes = primes_upto(&table, q_cutoff);
    let full = prime_power_log_sum(chi, s, primes);
    let v = if chi.is_principal() {
        0.0
    } else {
        track_argument(
            |sp| Ok(wrap_to_pi(prime_power_log_sum(chi, sp, primes).im)),
            BRANCH_START,
            s,
        )?
    };
    let qf = q_cutoff as f64;
    let tail_log = (qf.powf(1.0 - s) / (s - 1.0) + qf.powf(-s)) / (1.0 - 2.0f64.powf(-s));
    let bound = tail_log + 2.0 * H_TRUNCATION_EPS * primes.len() as f64;
    Ok((Complex64::new(full.re, v), bound))
}

/// log L for a nonprincipal character from the series value at s ≥ 1,
/// argument tracked from 1.5 the same way. Used where the prime-power sum
/// would need an astronomical cutoff (divergence probing near s = 1).
pub(crate) fn log_l_from_series(
    chi: &Character,
    s: f64,
    n_cutoff: u64,
) -> Result<(Complex64, f64)> {
    debug_assert!(!chi.is_principal());
    let at = |sp: f64| dirichlet_series(chi, sp, n_cutoff);
    let target = at(s)?;
    let v = track_argument(|sp| Ok(at(sp)?.value.arg()), BRANCH_START, s)?;
    let u = target.value.norm().ln();
    // first-order propagation of the series bound through the log
    let bound = 2.0 * target.error_bound / target.value.norm();
    Ok((Complex64::new(u, v), bound))
}
