//! Named verification suites, as run by `cuntz check`.

use std::fmt;
use std::str::FromStr;

use crate::config::Limits;
use crate::crossed::{check_coefficient_bound, check_covariance, from_cuntz, mul_crossed, to_cuntz};
use crate::cuntz_krieger::check_fa;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::maps::{apply_delta_star, apply_zeta, verify_endomorphism, verify_transfer, NamedMap};
use crate::report::{Check, Outcome, Report};
use crate::rfs::{check_car_relations, check_reduction_chain, check_rfs_axioms, monomial_basis, rfs_seed};
use crate::sample::Sampler;

pub const TRANSFER_SAMPLES: usize = 100;
pub const ENDOMORPHISM_SAMPLES: usize = 12;
pub const COVARIANCE_SAMPLES: usize = 100;
pub const CROSSED_SAMPLES: usize = 100;
pub const CONDITION_SAMPLES: usize = 50;
pub const DEFAULT_CAR_MODES: usize = 6;
pub const DEFAULT_CHAIN_MODES: usize = 5;
pub const DEFAULT_FA_LEVEL: usize = 3;
pub const DEFAULT_RFS_LEVEL: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Cuntz,
    Rfs,
    Car(usize),
    Transfer,
    Covariance,
    CrossedRoundtrip,
    ConditionStar,
    Fa(usize),
    All,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Suite::Cuntz => write!(f, "cuntz"),
            Suite::Rfs => write!(f, "rfs"),
            Suite::Car(n) => write!(f, "car {}", n),
            Suite::Transfer => write!(f, "transfer"),
            Suite::Covariance => write!(f, "covariance"),
            Suite::CrossedRoundtrip => write!(f, "crossed-roundtrip"),
            Suite::ConditionStar => write!(f, "condition-star"),
            Suite::Fa(k) => write!(f, "fa {}", k),
            Suite::All => write!(f, "all"),
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    /// Accepts `car N` and `fa K` with the argument separated by whitespace.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        let arg = |name: &str| -> Result<usize> {
            match parts.get(1) {
                Some(v) if parts.len() == 2 => v
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("{} expects a non-negative integer", name))),
                _ => Err(Error::InvalidArgument(format!("{} expects one integer argument", name))),
            }
        };
        let simple = |suite| {
            if parts.len() == 1 {
                Ok(suite)
            } else {
                Err(Error::InvalidArgument(format!("suite '{}' takes no argument", parts[0])))
            }
        };
        match parts.first().copied() {
            Some("cuntz") => simple(Suite::Cuntz),
            Some("rfs") => simple(Suite::Rfs),
            Some("car") => Ok(Suite::Car(arg("car")?)),
            Some("transfer") => simple(Suite::Transfer),
            Some("covariance") => simple(Suite::Covariance),
            Some("crossed-roundtrip") => simple(Suite::CrossedRoundtrip),
            Some("condition-star") => simple(Suite::ConditionStar),
            Some("fa") => Ok(Suite::Fa(arg("fa")?)),
            Some("all") => simple(Suite::All),
            _ => Err(Error::InvalidArgument(format!("unknown suite '{}'", s))),
        }
    }
}

/// `ψ_i*ψ_j = δ_ij I` and `Σ ψ_iψ_i* = I` for `d = 2, 3`.
pub fn cuntz_relations() -> Result<Report> {
    let mut report = Report::new("Cuntz relations");
    for d in 2..=3 {
        let id = Element::identity(d);
        let zero = Element::zero(d);
        let mut sum = Element::zero(d);
        for i in 1..=d {
            let si = Element::generator(d, i)?;
            sum = sum.checked_add(&si.checked_mul(&si.adjoint())?)?;
            for j in 1..=d {
                let sj = Element::generator(d, j)?;
                report.push(Check::identity(
                    format!("d={}: s{}* s{} = {}", d, i, j, if i == j { "I" } else { "0" }),
                    vec![i, j],
                    &si.adjoint().checked_mul(&sj)?,
                    if i == j { &id } else { &zero },
                ));
            }
        }
        report.push(Check::identity(format!("d={}: sum s_i s_i* = I", d), vec![], &sum, &id));
    }
    Ok(report)
}

pub fn rfs(limits: &Limits) -> Result<Report> {
    let level = DEFAULT_RFS_LEVEL.min(limits.max_basis_level);
    let mut report = check_rfs_axioms(level, limits)?;
    report.extend(check_reduction_chain(DEFAULT_CHAIN_MODES.min(limits.max_car_index), limits)?);
    Ok(report)
}

/// Endomorphism and transfer-operator identities on seeded `A_C` samples,
/// `δ_*ζ = id` on the monomial basis and `δ_*(a) = 0`.
pub fn transfer(seed: u64, limits: &Limits) -> Result<Report> {
    let mut sampler = Sampler::new(seed);
    let mut report = Report::new("shift and transfer");
    let small: Vec<Element> = (0..ENDOMORPHISM_SAMPLES).map(|_| sampler.polynomial(2, 2)).collect();
    for map in NamedMap::ALL {
        report.extend(verify_endomorphism(map, &small)?);
    }
    let samples: Vec<Element> = (0..TRANSFER_SAMPLES).map(|_| sampler.balanced(3)).collect();
    report.extend(verify_transfer(&samples)?);

    let level = 4.min(limits.max_basis_level);
    for (i, x) in monomial_basis(level).iter().enumerate() {
        report.push(Check::identity(
            "delta_star(zeta(x)) = x",
            vec![i],
            &apply_delta_star(&apply_zeta(x)?)?,
            x,
        ));
    }
    report.push(Check::identity(
        "delta_star(a) = 0",
        vec![],
        &apply_delta_star(&rfs_seed())?,
        &Element::zero(2),
    ));
    Ok(report)
}

pub fn covariance(seed: u64) -> Result<Report> {
    let mut sampler = Sampler::new(seed);
    let samples: Vec<Element> = (0..COVARIANCE_SAMPLES).map(|_| sampler.balanced(3)).collect();
    check_covariance(&samples)
}

/// Round trips and the crossed-product homomorphism on seeded polynomials of level at most 3.
pub fn crossed_roundtrip(seed: u64) -> Result<Report> {
    let mut sampler = Sampler::new(seed);
    let mut report = Report::new("crossed product normal form");
    for i in 1..=2 {
        let g = Element::generator(2, i)?;
        let ce = from_cuntz(&g)?;
        let support: Vec<i64> = ce.coeffs().keys().copied().collect();
        let expected = Element::monomial(2, &[i as u8], &[1])?;
        report.push(Check::condition(
            format!("from_cuntz(s{}) = {{1: s{} s1*}}", i, i),
            vec![],
            support == [1] && ce.coefficient(1) == expected,
        ));
    }
    let xs: Vec<Element> = (0..CROSSED_SAMPLES).map(|_| sampler.polynomial(2, 3)).collect();
    let ys: Vec<Element> = (0..CROSSED_SAMPLES).map(|_| sampler.polynomial(2, 3)).collect();
    for (i, x) in xs.iter().enumerate() {
        let ce = from_cuntz(x)?;
        report.push(Check::condition(
            "from_cuntz coefficients in A_C",
            vec![i],
            ce.coeffs().values().all(Element::is_gauge_invariant),
        ));
        let back = to_cuntz(&ce)?;
        report.push(Check::identity("to_cuntz(from_cuntz(x)) = x", vec![i], &back, x));
        let again = from_cuntz(&back)?;
        let same = again.coeffs().len() == ce.coeffs().len()
            && ce
                .coeffs()
                .iter()
                .all(|(k, a)| again.coefficient(*k).equals(a));
        report.push(Check::condition("from_cuntz(to_cuntz(c)) = c", vec![i], same));
        report.push(Check::identity(
            "to_cuntz(from_cuntz(x*)) = x*",
            vec![i],
            &to_cuntz(&from_cuntz(&x.adjoint())?)?,
            &x.adjoint(),
        ));
    }
    for (i, (x, y)) in xs.iter().zip(&ys).enumerate() {
        let (u, v) = (from_cuntz(x)?, from_cuntz(y)?);
        let lhs = to_cuntz(&mul_crossed(&u, &v)?)?;
        report.push(Check::identity(
            "to_cuntz(u v) = to_cuntz(u) to_cuntz(v)",
            vec![i],
            &lhs,
            &x.checked_mul(y)?,
        ));
    }
    Ok(report)
}

/// Samples used by the condition-(*) suite.
pub fn condition_star_samples(seed: u64) -> Vec<Element> {
    let mut sampler = Sampler::new(seed);
    (0..CONDITION_SAMPLES).map(|_| sampler.polynomial(2, 3)).collect()
}

/// `‖a_0‖ ≤ ‖x‖` with the norm bounded below at depth `limits.max_depth`.
pub fn condition_star(seed: u64, limits: &Limits) -> Result<Report> {
    let depth = limits.max_depth;
    let mut report = Report::new(format!("coefficient bound ||a_0|| <= ||x||, depth {}", depth));
    for (i, x) in condition_star_samples(seed).iter().enumerate() {
        let r = check_coefficient_bound(x, depth, limits.tolerance, limits)?;
        report.push(
            Check::new("||a_0|| <= l_L(x) + tol", vec![i], r.outcome).with_detail(format!(
                "||a_0|| = {:.12}, l_{} = {:.12}",
                r.a0_norm,
                depth,
                r.lower_bound()
            )),
        );
        report.push(Check::condition("l_L(x) nondecreasing in L", vec![i], r.monotone));
    }
    Ok(report)
}

pub fn run_suite(suite: Suite, seed: u64, limits: &Limits) -> Result<Report> {
    match suite {
        Suite::Cuntz => cuntz_relations(),
        Suite::Rfs => rfs(limits),
        Suite::Car(n) => check_car_relations(n, limits),
        Suite::Transfer => transfer(seed, limits),
        Suite::Covariance => covariance(seed),
        Suite::CrossedRoundtrip => crossed_roundtrip(seed),
        Suite::ConditionStar => condition_star(seed, limits),
        Suite::Fa(k) => check_fa(k, limits),
        Suite::All => {
            let mut report = Report::new(format!("all suites, seed {}", seed));
            for s in [
                Suite::Cuntz,
                Suite::Car(DEFAULT_CAR_MODES.min(limits.max_car_index)),
                Suite::Rfs,
                Suite::Transfer,
                Suite::Covariance,
                Suite::CrossedRoundtrip,
                Suite::ConditionStar,
                Suite::Fa(DEFAULT_FA_LEVEL),
            ] {
                let r = run_suite(s, seed, limits)?;
                for mut c in r.checks {
                    c.identity = format!("[{}] {}", s, c.identity);
                    report.push(c);
                }
            }
            Ok(report)
        }
    }
}

/// Outcome summary used for exit codes: any non-pass is a failure.
pub fn passed(report: &Report) -> bool {
    report.count(Outcome::Pass) == report.checks.len()
}
