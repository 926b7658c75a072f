//! Seeded batch verification and machine-readable reports.
//!
//! Every case is generated from a seed derived from `(seed, suite, index)`,
//! turned into a parameter map and evaluated through [`run_eval`], so each
//! record can be re-run on its own. Records are emitted in suite order and
//! case-index order regardless of how the cases were scheduled.

mod eval;
mod report;

use std::fmt;
use std::str::FromStr;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use eval::{constants_report, function_param, interval_and_cfg, precheck, run_eval, CONSTANTS_REL_TOL,
    INEQUALITIES};
pub use report::{format_number, read_jsonl, write_csv, write_jsonl, ReportFormat, SuiteRecord, SuiteSummary};

use crate::convexity::{
    random_ga_convex, random_ga_convex_nonnegative, random_interval, random_log_polynomial, random_symmetric_weight,
};
use crate::error::{Error, Result};
use crate::inequalities::{put_function, InequalityReport, Param, Params};
use crate::numerics::Interval;
use crate::par::{map_indexed, Execution};

/// A family of seeded cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SuiteKind {
    Identity,
    Theorem5,
    Corollary1,
    Corollary2,
    Theorem6,
    Corollary3,
    Corollary4,
    HhGa,
    Zhang,
    Constants,
    All,
}

impl SuiteKind {
    /// Every concrete suite, in the order `All` runs them.
    pub const CONCRETE: [SuiteKind; 10] = [
        SuiteKind::Identity,
        SuiteKind::Theorem5,
        SuiteKind::Corollary1,
        SuiteKind::Corollary2,
        SuiteKind::Theorem6,
        SuiteKind::Corollary3,
        SuiteKind::Corollary4,
        SuiteKind::HhGa,
        SuiteKind::Zhang,
        SuiteKind::Constants,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteKind::Identity => "identity",
            SuiteKind::Theorem5 => "theorem5",
            SuiteKind::Corollary1 => "corollary1",
            SuiteKind::Corollary2 => "corollary2",
            SuiteKind::Theorem6 => "theorem6",
            SuiteKind::Corollary3 => "corollary3",
            SuiteKind::Corollary4 => "corollary4",
            SuiteKind::HhGa => "hh_ga",
            SuiteKind::Zhang => "zhang",
            SuiteKind::Constants => "constants",
            SuiteKind::All => "all",
        }
    }

    fn stream(self) -> u64 {
        SuiteKind::CONCRETE.iter().position(|&k| k == self).unwrap_or(usize::MAX) as u64
    }

    /// Log-width range used when the configuration does not override it.
    fn default_logwidth(self) -> (f64, f64) {
        match self {
            SuiteKind::Identity => (0.1, 4.0),
            SuiteKind::Constants => (0.1, 5.0),
            SuiteKind::Zhang => (0.1, 2.0),
            _ => (0.1, 3.0),
        }
    }
}

impl fmt::Display for SuiteKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SuiteKind::CONCRETE
            .iter()
            .chain(std::iter::once(&SuiteKind::All))
            .find(|k| k.name() == s)
            .copied()
            .ok_or_else(|| Error::domain(format!("unknown suite `{s}`")))
    }
}

/// Everything that determines a suite run.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub suite: SuiteKind,
    pub trials: usize,
    pub seed: u64,
    /// Absolute and relative quadrature tolerance.
    pub tol: f64,
    /// Range of the left endpoint, sampled log-uniformly.
    pub a_range: (f64, f64),
    /// Range of `ln b - ln a`; `None` uses the suite default.
    pub logwidth_range: Option<(f64, f64)>,
    pub alpha_range: (f64, f64),
    pub q_range: (f64, f64),
    pub s_range: (f64, f64),
    pub execution: Execution,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suite: SuiteKind::All,
            trials: 100,
            seed: 0,
            tol: 1e-10,
            a_range: (0.5, 5.0),
            logwidth_range: None,
            alpha_range: (0.05, 2.0),
            q_range: (1.2, 5.0),
            s_range: (0.05, 1.0),
            execution: Execution::Parallel,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        let range = |name: &str, (lo, hi): (f64, f64), min: f64| {
            if lo.is_finite() && hi.is_finite() && lo >= min && lo <= hi {
                Ok(())
            } else {
                Err(Error::domain(format!("invalid {name} range [{lo}, {hi}]")))
            }
        };
        range("a", self.a_range, f64::MIN_POSITIVE)?;
        if let Some(w) = self.logwidth_range {
            range("logwidth", w, f64::MIN_POSITIVE)?;
        }
        range("alpha", self.alpha_range, f64::MIN_POSITIVE)?;
        range("q", self.q_range, 1.0)?;
        if self.q_range.0 <= 1.0 {
            return Err(Error::domain("q range must lie above 1"));
        }
        range("s", self.s_range, f64::MIN_POSITIVE)?;
        if self.s_range.1 > 1.0 {
            return Err(Error::domain("s range must lie in (0, 1]"));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::domain(format!("tolerance must be positive, got {}", self.tol)));
        }
        Ok(())
    }

    fn suites(&self) -> Vec<SuiteKind> {
        match self.suite {
            SuiteKind::All => SuiteKind::CONCRETE.to_vec(),
            k => vec![k],
        }
    }
}

/// Seed of case `index` of `suite` under the run seed.
pub fn case_seed(seed: u64, suite: SuiteKind, index: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(suite.stream());
    rng.set_word_pos(2 * index as u128);
    rng.next_u64()
}

fn draw(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> f64 {
    if lo == hi {
        lo
    } else {
        rng.gen_range(lo..=hi)
    }
}

/// The inequality name and parameters of one generated case.
pub fn make_case(cfg: &SuiteConfig, suite: SuiteKind, index: usize, seed: u64) -> (&'static str, Params) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let width = cfg.logwidth_range.unwrap_or(suite.default_logwidth());
    let interval = random_interval(&mut rng, cfg.a_range, width);
    let mut p = Params::new();
    p.insert("a".into(), Param::Num(interval.a()));
    p.insert("b".into(), Param::Num(interval.b()));
    p.insert("tol".into(), Param::Num(cfg.tol));
    let roughness = rng.gen_range(0.0..=1.0);
    let ga = |rng: &mut ChaCha8Rng, iv: &Interval| random_ga_convex(rng.next_u64(), iv, roughness);
    let name = match suite {
        SuiteKind::Identity | SuiteKind::Theorem5 | SuiteKind::Theorem6 => {
            put_function(&mut p, "f", &ga(&mut rng, &interval));
            let degree = rng.gen_range(0..=3);
            put_function(&mut p, "h", &random_log_polynomial(rng.next_u64(), &interval, degree));
            match suite {
                SuiteKind::Identity => "lemma1",
                SuiteKind::Theorem5 => "thm5",
                _ => {
                    p.insert("q".into(), Param::Num([1.5, 2.0, 3.0, 5.0][index % 4]));
                    "thm6"
                }
            }
        }
        SuiteKind::Corollary1 | SuiteKind::Corollary3 => {
            put_function(&mut p, "f", &ga(&mut rng, &interval));
            put_function(&mut p, "g", &random_symmetric_weight(rng.next_u64(), &interval));
            if suite == SuiteKind::Corollary1 {
                let relaxed = index % 2 == 1;
                let hi = if relaxed { cfg.alpha_range.1.min(1.0) } else { cfg.alpha_range.1 };
                let lo = cfg.alpha_range.0.min(hi);
                p.insert("alpha".into(), Param::Num(draw(&mut rng, (lo, hi))));
                p.insert("variant".into(), Param::Text(if relaxed { "relaxed" } else { "exact" }.into()));
                "cor1"
            } else {
                p.insert("alpha".into(), Param::Num(draw(&mut rng, cfg.alpha_range)));
                p.insert("q".into(), Param::Num(draw(&mut rng, cfg.q_range)));
                "cor3"
            }
        }
        SuiteKind::Corollary2 => {
            put_function(&mut p, "f", &ga(&mut rng, &interval));
            if index % 2 == 0 {
                p.insert("alpha".into(), Param::Num(draw(&mut rng, cfg.alpha_range)));
                p.insert("variant".into(), Param::Text("eq217".into()));
            } else {
                p.insert("alpha".into(), Param::Num(1.0));
                p.insert("variant".into(), Param::Text("eq218".into()));
            }
            "cor2"
        }
        SuiteKind::Corollary4 => {
            put_function(&mut p, "f", &ga(&mut rng, &interval));
            p.insert("q".into(), Param::Num(draw(&mut rng, cfg.q_range)));
            "cor4"
        }
        SuiteKind::HhGa => {
            put_function(&mut p, "f", &random_ga_convex_nonnegative(rng.next_u64(), &interval, roughness));
            if index % 2 == 1 {
                p.insert("s".into(), Param::Num(draw(&mut rng, cfg.s_range)));
            }
            "hh_ga"
        }
        SuiteKind::Zhang => {
            put_function(&mut p, "f", &ga(&mut rng, &interval));
            let q = draw(&mut rng, cfg.q_range);
            p.insert("q".into(), Param::Num(q));
            match index % 3 {
                0 => "zhang1",
                1 => "zhang2",
                _ => {
                    p.insert("p".into(), Param::Num(rng.gen_range(0.05..0.95) * 2.0 * q));
                    "zhang3"
                }
            }
        }
        SuiteKind::Constants => "constants",
        SuiteKind::All => unreachable!("All is expanded before case generation"),
    };
    (name, p)
}

/// A failed evaluation recorded as a failing report that keeps the request
/// parameters and the error message.
fn error_report(name: &str, mut params: Params, err: &Error) -> InequalityReport {
    params.insert("error".into(), Param::Text(err.to_string()));
    InequalityReport {
        name: name.to_string(),
        params,
        lhs: f64::NAN,
        rhs: f64::NAN,
        slack: f64::NAN,
        pass: false,
        error_budget: f64::NAN,
    }
}

/// Runs every selected suite and returns the records in canonical order.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<SuiteRecord>> {
    cfg.validate()?;
    let mut out = Vec::new();
    for suite in cfg.suites() {
        let records = map_indexed(cfg.trials, cfg.execution, |i| {
            let seed = case_seed(cfg.seed, suite, i);
            let (name, params) = make_case(cfg, suite, i, seed);
            let report = run_eval(name, &params).unwrap_or_else(|e| error_report(name, params, &e));
            SuiteRecord { report, seed, case_index: i }
        });
        out.extend(records);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(suite: SuiteKind, trials: usize) -> SuiteConfig {
        SuiteConfig { suite, trials, seed: 42, ..SuiteConfig::default() }
    }

    #[test]
    fn suite_names_round_trip() {
        for k in SuiteKind::CONCRETE.iter().chain([SuiteKind::All].iter()) {
            assert_eq!(k.name().parse::<SuiteKind>().unwrap(), *k);
        }
        assert!("bogus".parse::<SuiteKind>().is_err());
    }

    #[test]
    fn case_seeds_are_distinct_and_stable() {
        let a = case_seed(1, SuiteKind::Theorem5, 0);
        assert_eq!(a, case_seed(1, SuiteKind::Theorem5, 0));
        assert_ne!(a, case_seed(1, SuiteKind::Theorem5, 1));
        assert_ne!(a, case_seed(1, SuiteKind::Theorem6, 0));
        assert_ne!(a, case_seed(2, SuiteKind::Theorem5, 0));
    }

    #[test]
    fn every_suite_runs_and_passes() {
        let recs = run_suite(&small(SuiteKind::All, 4)).unwrap();
        assert_eq!(recs.len(), 40);
        for r in &recs {
            assert!(r.report.pass, "{:?}", r.report);
        }
    }

    #[test]
    fn zero_trials_is_empty() {
        assert!(run_suite(&small(SuiteKind::All, 0)).unwrap().is_empty());
    }

    #[test]
    fn records_reproduce_from_params() {
        for r in run_suite(&small(SuiteKind::All, 2)).unwrap() {
            let again = run_eval(&r.report.name, &r.report.params).unwrap();
            assert_eq!(again.lhs.to_bits(), r.report.lhs.to_bits());
            assert_eq!(again.rhs.to_bits(), r.report.rhs.to_bits());
        }
    }

    #[test]
    fn sequential_matches_parallel() {
        let par = run_suite(&small(SuiteKind::Theorem5, 6)).unwrap();
        let seq = run_suite(&SuiteConfig { execution: Execution::Sequential, ..small(SuiteKind::Theorem5, 6) }).unwrap();
        assert_eq!(par, seq);
    }

    #[test]
    fn invalid_config() {
        let bad = SuiteConfig { q_range: (1.0, 2.0), ..SuiteConfig::default() };
        assert!(run_suite(&bad).is_err());
        let bad = SuiteConfig { s_range: (0.5, 1.5), ..SuiteConfig::default() };
        assert!(run_suite(&bad).is_err());
    }
}
