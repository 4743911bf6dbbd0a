//! `revlab verify`: the identity suites, reported as JSON. Failures are
//! reported, not raised; the exit code says whether every check passed.

use std::time::Instant;

use clap::{Args, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use revlab::analysis::{boundary_twist_residual, parseval_norm};
use revlab::numbers::{composition_plan, transform_polynomial, ThetaValue};
use revlab::spectral::{
    constant_phase, evolve_by_composition, evolve_periodic, evolve_quasi, linear_phase,
    periodic_phase, quasi_phase, revival_representation, revival_weights, CompositionMode,
};
use revlab::{Basis, DispersionPolynomial, Rational, SpectralState, Time};
use serde::Serialize;

use crate::error::CliError;
use crate::Progress;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Quasi-basis evolution: boundary twist and norm preservation.
    Modes,
    /// Revival weights: residue identity and finite-translate structure.
    Revival,
    /// Factorisation into monomial groups.
    Composition,
    /// Per-mode correspondence between the quasi and periodic problems.
    Correspondence,
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Largest polynomial order checked.
    #[arg(long, default_value_t = 6)]
    pub n_max: u32,
    /// Largest revival denominator checked.
    #[arg(long, default_value_t = 64)]
    pub q_max: u64,
    /// Number of modes J.
    #[arg(long = "J", default_value_t = 1024)]
    pub modes: usize,
    /// Seed for the random states and polynomials.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Serialize)]
pub struct CheckResult {
    pub suite: Suite,
    pub identity: String,
    pub parameters: String,
    pub max_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub version: &'static str,
    pub suite: Suite,
    pub n_max: u32,
    pub q_max: u64,
    pub modes: usize,
    pub seed: u64,
    pub pass: bool,
    pub checks: Vec<CheckResult>,
    pub duration_seconds: f64,
}

struct Recorder {
    suite: Suite,
    checks: Vec<CheckResult>,
}

impl Recorder {
    fn record(&mut self, identity: &str, parameters: String, max_error: f64, tolerance: f64) {
        self.checks.push(CheckResult {
            suite: self.suite,
            identity: identity.to_string(),
            parameters,
            // NaN never passes.
            pass: max_error < tolerance,
            max_error,
            tolerance,
        });
    }
}

fn thetas() -> Vec<ThetaValue> {
    ["1/4", "3/7", "sqrt(2)/4", "0.318309886"]
        .iter()
        .map(|s| s.parse().expect("valid theta literal"))
        .collect()
}

fn times() -> Vec<Time> {
    vec![
        Time::exact_turns(Rational::new(1, 3).expect("nonzero denominator")),
        Time::seconds(1.0),
    ]
}

fn random_state(modes: usize, basis: Basis, rng: &mut ChaCha8Rng) -> SpectralState {
    SpectralState::from_fn(modes, basis, |_| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

fn random_polynomial(n: usize, rng: &mut ChaCha8Rng) -> DispersionPolynomial {
    let mut alpha: Vec<i64> = (0..=n).map(|_| rng.gen_range(-5..=5)).collect();
    while alpha[n] == 0 {
        alpha[n] = rng.gen_range(-5..=5);
    }
    DispersionPolynomial::new(alpha).expect("nonzero leading coefficient")
}

fn modes_suite(args: &VerifyArgs, rec: &mut Recorder) -> Result<(), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    for n in 2..=args.n_max.max(2) {
        let p = DispersionPolynomial::monomial(n)?;
        for theta in thetas() {
            for t in times() {
                let u0 = random_state(args.modes, Basis::Quasi(theta), &mut rng);
                let u = evolve_quasi(&u0, &p, &t)?;
                let params = format!("n={n} theta={theta} t={t} J={}", args.modes);
                rec.record(
                    "boundary twist e^{i2πθ}u(0) = u(2π), relative",
                    params.clone(),
                    boundary_twist_residual(&u) / parseval_norm(&u),
                    1e-10,
                );
                rec.record(
                    "Parseval norm preserved, relative",
                    params,
                    (parseval_norm(&u) / parseval_norm(&u0) - 1.0).abs(),
                    1e-12,
                );
            }
        }
    }
    Ok(())
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn revival_suite(args: &VerifyArgs, rec: &mut Recorder) -> Result<(), CliError> {
    for n in 2..=args.n_max.max(2) {
        let mut worst = 0.0f64;
        for q in 1..=args.q_max.max(1) {
            for p in (1..q.max(2)).filter(|&p| gcd(p, q) == 1) {
                worst = worst.max(revival_weights(n, p, q)?.residue_identity_error());
            }
        }
        rec.record(
            "revival residue identity Σ_k w_k e^{2πirk/q} = e^{-2πi r^n p/q}",
            format!("n={n} q<={}", args.q_max),
            worst,
            1e-11,
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    for n in 2..=args.n_max.clamp(2, 5) {
        let p = DispersionPolynomial::monomial(n)?;
        for theta in ["1/4", "3/7"] {
            let theta: ThetaValue = theta.parse()?;
            for (a, b) in [(1, 3), (2, 5)] {
                let t = Time::exact_turns(Rational::new(a, b)?);
                let params = format!("n={n} theta={theta} t={t} J={}", args.modes);
                let u0 = random_state(args.modes, Basis::Quasi(theta), &mut rng);
                let err = match revival_representation(&p, &theta, &t) {
                    Ok(rep) => rep
                        .apply(&u0)?
                        .max_difference(&evolve_quasi(&u0, &p, &t)?)?,
                    Err(_) => f64::NAN,
                };
                rec.record("finite translate sum equals evolution", params, err, 1e-10);
            }
        }
    }
    Ok(())
}

fn composition_suite(args: &VerifyArgs, rec: &mut Recorder) -> Result<(), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let thetas = thetas();
    let times = times();
    for n in 3..=args.n_max.max(3) as usize {
        let mut worst = 0.0f64;
        let mut worst_commute = 0.0f64;
        for trial in 0..10 {
            let p = random_polynomial(n, &mut rng);
            let theta = thetas[trial % thetas.len()];
            let t = times[trial % times.len()];
            let a = transform_polynomial(&p, &theta)?;
            let plan = composition_plan(&p, &theta, &t)?;
            let z0 = random_state(args.modes, Basis::Periodic, &mut rng);
            let direct = evolve_periodic(&z0, &a, &t)?;
            for mode in [
                CompositionMode::Diagonal,
                CompositionMode::RevivalWhereRational,
            ] {
                let z = evolve_by_composition(&z0, &plan, mode)?;
                worst = worst.max(z.max_difference(&direct)?);
            }
            let reversed: Vec<usize> = (0..plan.len()).rev().collect();
            let forward = evolve_by_composition(&z0, &plan, CompositionMode::Diagonal)?;
            let backward =
                evolve_by_composition(&z0, &plan.permuted(&reversed), CompositionMode::Diagonal)?;
            worst_commute = worst_commute.max(forward.max_difference(&backward)?);
        }
        let params = format!("n={n} random P x10 seed={} J={}", args.seed, args.modes);
        rec.record(
            "composition equals diagonal evolution",
            params.clone(),
            worst,
            1e-10,
        );
        rec.record("group factors commute", params, worst_commute, 1e-12);
    }
    Ok(())
}

fn correspondence_suite(args: &VerifyArgs, rec: &mut Recorder) -> Result<(), CliError> {
    let limit = 2 * args.modes as i64;
    for n in 3..=args.n_max.max(3) {
        let p = DispersionPolynomial::monomial(n)?;
        for theta in thetas() {
            let a = transform_polynomial(&p, &theta)?;
            let s = p.drift_coefficient(&theta);
            let p_theta = p.value_at_theta(&theta);
            for t in times() {
                let global = constant_phase(&p_theta, &t);
                let worst = (-limit..=limit)
                    .map(|j| {
                        let lhs = quasi_phase(&p, &theta, j, &t);
                        let rhs = periodic_phase(&a, j, &t) * global * linear_phase(&s, j, &t);
                        (lhs - rhs).norm()
                    })
                    .fold(0.0f64, f64::max);
                rec.record(
                    "e^{-iP(j+θ)t} = e^{-iA(j)t} e^{-iP(θ)t} e^{-is_θ jt}",
                    format!("n={n} theta={theta} t={t} |j|<={limit}"),
                    worst,
                    1e-9,
                );
            }
        }
    }
    Ok(())
}

pub fn run(args: &VerifyArgs, progress: &Progress) -> Result<VerifyReport, CliError> {
    let start = Instant::now();
    let suites: &[Suite] = match args.suite {
        Suite::All => &[
            Suite::Modes,
            Suite::Revival,
            Suite::Composition,
            Suite::Correspondence,
        ],
        ref one => std::slice::from_ref(one),
    };
    let mut checks = Vec::new();
    for &suite in suites {
        progress.note(format!("running suite {suite:?}"));
        let mut rec = Recorder {
            suite,
            checks: Vec::new(),
        };
        match suite {
            Suite::Modes => modes_suite(args, &mut rec)?,
            Suite::Revival => revival_suite(args, &mut rec)?,
            Suite::Composition => composition_suite(args, &mut rec)?,
            Suite::Correspondence => correspondence_suite(args, &mut rec)?,
            Suite::All => unreachable!("expanded above"),
        }
        checks.extend(rec.checks);
    }
    Ok(VerifyReport {
        version: revlab::VERSION,
        suite: args.suite,
        n_max: args.n_max,
        q_max: args.q_max,
        modes: args.modes,
        seed: args.seed,
        pass: checks.iter().all(|c| c.pass),
        checks,
        duration_seconds: start.elapsed().as_secs_f64(),
    })
}
