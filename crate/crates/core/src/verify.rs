//! Verification suites shared by the `verify` subcommand and the tests.
//!
//! Each suite runs exact-equality checks and stops at the first
//! counterexample. Notes are informational lines (the `c` reconciliation
//! block lives there and can never fail a suite).

use std::fmt;

use crate::blowupring::{dp4_c_ring, xpow_by_substitution, xpow_closed, xpow_direct, xpow_reduce};
use crate::closedform::{dp4_c_paper, dp4_sum_closed, vol1_closed_with, vol2_closed_with, CReconciliation};
use crate::error::VolumeError;
use crate::exactmath::{
    alternating_sum, format_rational, gen_binomial, int, pow, rat, sign_pow, vandermonde_sum,
};
use crate::residues::{dp4_residue_sum, jk_volume_rank1_with, jk_volume_rank2_with};
use crate::sampling::{random_permutation, random_scale, random_weights, Lcg};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Arr1,
    Arr2,
    Dp4,
    Ring,
    All,
}

impl std::str::FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "identities" => Suite::Identities,
            "arr1" => Suite::Arr1,
            "arr2" => Suite::Arr2,
            "dp4" => Suite::Dp4,
            "ring" => Suite::Ring,
            "all" => Suite::All,
            other => return Err(format!("unknown suite {other:?}")),
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub seed: u64,
    /// `None` selects each suite's default trial count.
    pub trials: Option<usize>,
    pub threads: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 1,
            trials: None,
            threads: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: u64,
    pub failure: Option<String>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        SuiteReport {
            name,
            checks: 0,
            failure: None,
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    /// Records one check; returns `false` (and keeps the first message) on failure.
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) -> bool {
        self.checks += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(msg());
        }
        ok
    }

    fn error(&mut self, e: VolumeError) {
        self.check(false, || format!("unexpected error: {e}"));
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {}: {} checks", self.name, self.checks)?;
        if let Some(msg) = &self.failure {
            write!(f, "\n  counterexample: {msg}")?;
        }
        for note in &self.notes {
            write!(f, "\n  {note}")?;
        }
        Ok(())
    }
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Vec<SuiteReport> {
    match suite {
        Suite::Identities => vec![identities(cfg)],
        Suite::Arr1 => vec![arr1(cfg)],
        Suite::Arr2 => vec![arr2(cfg)],
        Suite::Dp4 => vec![dp4()],
        Suite::Ring => vec![ring()],
        Suite::All => vec![identities(cfg), arr1(cfg), arr2(cfg), dp4(), ring()],
    }
}

/// Upper negation, the symmetric negated-index identity, and the two
/// summation identities, over arguments with `|x| <= 30`.
pub fn identities(cfg: &VerifyConfig) -> SuiteReport {
    let mut r = SuiteReport::new("identities");
    for z in -30..=30 {
        for k in 0..=30 {
            if !r.check(gen_binomial(z, k) == sign_pow(k) * gen_binomial(k - z - 1, k), || {
                format!("upper negation z={z} k={k}")
            }) {
                return r;
            }
        }
    }
    for n in 0..=30 {
        for k in 0..=30 {
            let ok = gen_binomial(-n, k) == sign_pow(k) * gen_binomial(n + k - 1, k)
                && sign_pow(k) * gen_binomial(-n - 1, k) == sign_pow(n) * gen_binomial(-k - 1, n);
            if !r.check(ok, || format!("negated index n={n} k={k}")) {
                return r;
            }
        }
    }
    let mut rng = Lcg::new(cfg.seed);
    let draws = cfg.trials.unwrap_or(5000);
    for _ in 0..draws {
        let l = rng.range(0, 30);
        let (s, m, n) = (rng.range(-30, 30), rng.range(-30, 30), rng.range(-30, 30));
        let lhs = vandermonde_sum(l, s, m, n).expect("l >= 0");
        if !r.check(lhs == gen_binomial(l + s, l - m + n), || {
            format!("vandermonde l={l} s={s} m={m} n={n}")
        }) {
            return r;
        }
        let lhs = alternating_sum(l, s, m, n).expect("l >= 0");
        if !r.check(lhs == sign_pow(l + m) * gen_binomial(s - m, n - l), || {
            format!("alternating l={l} s={s} m={m} n={n}")
        }) {
            return r;
        }
    }
    r
}

fn oracle_suite(name: &'static str, n: usize, m_hi: usize, default_trials: usize, cfg: &VerifyConfig) -> SuiteReport {
    let mut r = SuiteReport::new(name);
    let mut rng = Lcg::new(cfg.seed);
    let trials = cfg.trials.unwrap_or(default_trials);
    let closed = |w: &_| -> Result<_, VolumeError> {
        Ok(if n == 1 { vol1_closed_with(w, cfg.threads)? } else { vol2_closed_with(w, cfg.threads)? }.volume)
    };
    let oracle = |w: &_| if n == 1 { jk_volume_rank1_with(w, cfg.threads) } else { jk_volume_rank2_with(w, cfg.threads) };
    for _ in 0..trials {
        let w = random_weights(&mut rng, n, 4, m_hi);
        let (c, o) = match (closed(&w), oracle(&w)) {
            (Ok(c), Ok(o)) => (c, o),
            (Err(e), _) | (_, Err(e)) => {
                r.error(e);
                return r;
            }
        };
        if !r.check(c == o, || {
            format!("d=({}) closed={} oracle={}", w.to_list_string(), format_rational(&c), format_rational(&o))
        }) {
            return r;
        }

        let dim = if n == 1 { w.m() - 3 } else { 2 * w.m() - 8 };
        let t = random_scale(&mut rng);
        let scaled = w.scaled(&t).expect("t < 1 keeps weights in range");
        match closed(&scaled) {
            Ok(v) => {
                if !r.check(v == &c * pow(&t, dim as u32), || {
                    format!("homogeneity d=({}) t={}", w.to_list_string(), format_rational(&t))
                }) {
                    return r;
                }
            }
            Err(e) => {
                r.error(e);
                return r;
            }
        }
        let perm = random_permutation(&mut rng, w.m());
        match closed(&w.permuted(&perm)) {
            Ok(v) => {
                if !r.check(v == c, || format!("symmetry d=({}) perm={perm:?}", w.to_list_string())) {
                    return r;
                }
            }
            Err(e) => {
                r.error(e);
                return r;
            }
        }
    }
    r
}

/// Closed form vs residue oracle on random generic weights, with
/// homogeneity and permutation checks on each sample (n = 1, m in 4..=9).
pub fn arr1(cfg: &VerifyConfig) -> SuiteReport {
    oracle_suite("arr1", 1, 9, 200, cfg)
}

/// Same for n = 2, m in 4..=7.
pub fn arr2(cfg: &VerifyConfig) -> SuiteReport {
    oracle_suite("arr2", 2, 7, 50, cfg)
}

pub fn dp4() -> SuiteReport {
    let mut r = SuiteReport::new("dp4");
    r.check(dp4_sum_closed(5).ok() == Some(rat(1, 24)), || "S(5) != 1/24".into());
    for m in 4..=15 {
        let (c, o) = (dp4_sum_closed(m), dp4_residue_sum(m));
        let ok = matches!((&c, &o), (Ok(c), Ok(o)) if c == o);
        if !r.check(ok, || format!("m={m} closed={c:?} residue={o:?}")) {
            return r;
        }
    }
    r
}

/// Recursion and reduction strategies for `x^k`; the `c` reconciliation for
/// n = 2..=6 is appended as notes.
pub fn ring() -> SuiteReport {
    let mut r = SuiteReport::new("ring");
    for k in 1..=32u32 {
        let (a, b) = xpow_reduce(k);
        let (a1, b1) = xpow_reduce(k + 1);
        let ok = a1 == &b - &a * int(4)
            && b1 == -&a * int(4)
            && xpow_direct(k) == (a.clone(), b.clone())
            && xpow_by_substitution(k) == (a.clone(), b.clone())
            && xpow_closed(k) == (a, b);
        if !r.check(ok, || format!("x^k reduction k={k}")) {
            return r;
        }
    }
    for n in 2..=12 {
        if !r.check(dp4_c_ring(n).is_integer(), || format!("c_ring({n}) not an integer")) {
            return r;
        }
    }
    r.notes.push("c reconciliation (report only):".into());
    for n in 2..=6 {
        let rec = CReconciliation::for_n(n);
        r.notes.push(format!(
            "n={n} c_paper={} c_ring={} {}",
            format_rational(&dp4_c_paper(n)),
            format_rational(&rec.c_ring),
            if rec.agree { "agree" } else { "differ" }
        ));
    }
    r
}
