//! Seeded verification suites behind `intzeta verify`.
//!
//! Case lists depend only on the suite and the seed, so a run can be
//! reproduced exactly; results come back in case order regardless of the
//! number of worker threads.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use intzeta::{pi_plus, product_m, shuffle, stuffle, Index, IndexSum, Oracle};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Reduction,
    Shuffle,
    Stuffle,
    Homomorphism,
    MFormula,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Reduction,
        Suite::Shuffle,
        Suite::Stuffle,
        Suite::Homomorphism,
        Suite::MFormula,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Reduction => "reduction",
            Suite::Shuffle => "shuffle",
            Suite::Stuffle => "stuffle",
            Suite::Homomorphism => "homomorphism",
            Suite::MFormula => "m-formula",
        }
    }

    /// Truncation order used when none is given.
    pub fn default_order(self) -> usize {
        match self {
            Suite::Stuffle => intzeta::series::DEFAULT_HARMONIC_ORDER,
            _ => intzeta::series::DEFAULT_SERIES_ORDER,
        }
    }

    /// `(inputs per case, max depth, lowest entry, highest entry)`.
    fn shape(self) -> (usize, usize, i64, i64) {
        match self {
            Suite::Reduction => (1, 3, -3, 4),
            Suite::Shuffle | Suite::Stuffle => (2, 3, -3, 3),
            Suite::Homomorphism => (2, 3, -2, 3),
            Suite::MFormula => (2, 4, -4, 4),
        }
    }

    fn stream(self) -> u64 {
        Suite::ALL.iter().position(|&s| s == self).expect("listed") as u64
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Case {
    pub id: usize,
    pub inputs: Vec<Index>,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, k) in self.inputs.iter().enumerate() {
            if i > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub case: Case,
    pub pass: bool,
    /// Empty on success.
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub order: usize,
    pub outcomes: Vec<Outcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> usize {
        self.outcomes.iter().filter(|o| o.pass).count()
    }

    pub fn all_pass(&self) -> bool {
        self.passed() == self.outcomes.len()
    }

    /// `"<suite>: <passed>/<total> pass"`.
    pub fn summary_line(&self) -> String {
        format!(
            "{}: {}/{} pass",
            self.suite,
            self.passed(),
            self.outcomes.len()
        )
    }
}

/// A random index with depth in `0..=max_depth` and entries in `lo..=hi`.
pub fn random_index(rng: &mut impl Rng, max_depth: usize, lo: i64, hi: i64) -> Index {
    let depth = rng.gen_range(0..=max_depth);
    Index::new(
        (0..depth)
            .map(|_| rng.gen_range(lo..=hi))
            .collect::<Vec<_>>(),
    )
}

/// Every index of depth at most `max_depth` with entries in `lo..=hi`.
pub fn index_grid(max_depth: usize, lo: i64, hi: i64) -> Vec<Index> {
    let mut layer = vec![Vec::new()];
    let mut out = vec![Index::empty()];
    for _ in 0..max_depth {
        layer = layer
            .iter()
            .flat_map(|prefix: &Vec<i64>| {
                (lo..=hi).map(move |e| {
                    let mut v = prefix.clone();
                    v.push(e);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned().map(Index::new));
    }
    out
}

/// The case list for a suite; a pure function of `(suite, seed, count)`.
pub fn generate_cases(suite: Suite, seed: u64, count: usize) -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(suite.stream());
    let (arity, depth, lo, hi) = suite.shape();
    (0..count)
        .map(|id| Case {
            id,
            inputs: (0..arity)
                .map(|_| random_index(&mut rng, depth, lo, hi))
                .collect(),
        })
        .collect()
}

thread_local! {
    static ORACLES: RefCell<HashMap<usize, Oracle>> = RefCell::new(HashMap::new());
}

fn with_oracle<T>(order: usize, f: impl FnOnce(&mut Oracle) -> T) -> T {
    ORACLES.with(|cell| {
        let mut map = cell.borrow_mut();
        let oracle = map
            .entry(order)
            .or_insert_with(|| Oracle::new(order).expect("order validated by caller"));
        f(oracle)
    })
}

fn series_outcome(report: intzeta::Report) -> (bool, String) {
    match report.first_mismatch {
        None => (true, String::new()),
        Some(n) => (false, format!("first mismatch at n = {n}")),
    }
}

/// `π⁺(a ⋆ b) = π⁺(π⁺a ⋆ π⁺b)` for the given product.
pub fn homomorphism_holds(
    product: impl Fn(&IndexSum, &IndexSum) -> IndexSum,
    a: &Index,
    b: &Index,
) -> bool {
    let (a, b) = (IndexSum::single(a.clone()), IndexSum::single(b.clone()));
    pi_plus(&product(&a, &b)) == pi_plus(&product(&pi_plus(&a), &pi_plus(&b)))
}

/// Runs one case. `order` must be at least 1.
pub fn check_case(suite: Suite, case: &Case, order: usize) -> Outcome {
    let ins = &case.inputs;
    let (pass, detail) = match suite {
        Suite::Reduction => series_outcome(with_oracle(order, |o| o.verify_reduction(&ins[0]))),
        Suite::Shuffle => {
            series_outcome(with_oracle(order, |o| o.verify_shuffle(&ins[0], &ins[1])))
        }
        Suite::Stuffle => {
            series_outcome(with_oracle(order, |o| o.verify_stuffle(&ins[0], &ins[1])))
        }
        Suite::Homomorphism => {
            let mut bad = Vec::new();
            if !homomorphism_holds(shuffle, &ins[0], &ins[1]) {
                bad.push("shuffle");
            }
            if !homomorphism_holds(stuffle, &ins[0], &ins[1]) {
                bad.push("stuffle");
            }
            (bad.is_empty(), bad.join(", "))
        }
        Suite::MFormula => {
            let (a, b) = (
                IndexSum::single(ins[0].clone()),
                IndexSum::single(ins[1].clone()),
            );
            let expected = product_m(ins[0].m_index(), ins[1].m_index());
            let mut bad = Vec::new();
            for (name, p) in [("shuffle", shuffle(&a, &b)), ("stuffle", stuffle(&a, &b))] {
                if p.m_index() != expected {
                    bad.push(format!("{name} m = {}, expected {expected}", p.m_index()));
                }
            }
            (bad.is_empty(), bad.join("; "))
        }
    };
    Outcome {
        case: case.clone(),
        pass,
        detail,
    }
}

/// Checks every case, in parallel when `jobs > 1`; outcomes keep case order.
pub fn run_cases(suite: Suite, cases: &[Case], order: usize, jobs: usize) -> SuiteReport {
    let outcomes = if jobs <= 1 {
        cases.iter().map(|c| check_case(suite, c, order)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| {
            cases
                .par_iter()
                .map(|c| check_case(suite, c, order))
                .collect()
        })
    };
    SuiteReport {
        suite,
        order,
        outcomes,
    }
}

pub fn run_suite(suite: Suite, seed: u64, count: usize, order: usize, jobs: usize) -> SuiteReport {
    run_cases(suite, &generate_cases(suite, seed, count), order, jobs)
}
