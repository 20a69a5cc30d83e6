use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{find_regressively_regular_witness, SearchStats, WitnessResult};
use crate::intsets::{build_fh, fh_equal, GammaTriple, Multiset, Semantics};
use crate::predicates::Family;
use crate::scalar::{Integer, Natural};

use super::{solve_subset_sum, Method, SubsetCertificate};

/// Wall-clock milliseconds per solve. Informational only.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct SolveTimings {
    #[serde(rename = "solve_F")]
    pub solve_f: f64,
    #[serde(rename = "solve_H")]
    pub solve_h: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "N: Natural, Z: Integer")]
pub struct ExperimentReport<N: Natural, Z: Integer> {
    pub witness: WitnessResult<N>,
    pub method: Method,
    #[serde(rename = "F")]
    pub f_set: Multiset<Z>,
    #[serde(rename = "H")]
    pub h_set: Multiset<Z>,
    pub fh_equal: bool,
    #[serde(rename = "solvable_F")]
    pub solvable_f: bool,
    #[serde(rename = "solvable_H")]
    pub solvable_h: bool,
    pub agreement: bool,
    pub cardinality_ok: bool,
    #[serde(rename = "certificate_F")]
    pub certificate_f: Option<SubsetCertificate<Z>>,
    #[serde(rename = "certificate_H")]
    pub certificate_h: Option<SubsetCertificate<Z>>,
    pub timings_ms: SolveTimings,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(
    tag = "outcome",
    rename_all = "snake_case",
    bound = "N: Natural, Z: Integer"
)]
pub enum ExperimentOutcome<N: Natural, Z: Integer> {
    Completed(Box<ExperimentReport<N, Z>>),
    /// The bounded family holds no regressively regular (f, E) of length p.
    NoWitness {
        search_stats: SearchStats,
    },
}

/// Witness search, F/H construction under multiset semantics, and a
/// target-zero solve of both sets (run concurrently, each timed).
pub fn run_corollary_experiment<N: Natural, Z: Integer>(
    fam: &Family<N>,
    p: usize,
    gammas: &GammaTriple,
    method: Method,
) -> Result<ExperimentOutcome<N, Z>> {
    let (witness, stats) = find_regressively_regular_witness(fam, p)?;
    let Some(witness) = witness else {
        return Ok(ExperimentOutcome::NoWitness {
            search_stats: stats,
        });
    };
    let f = fam
        .get(&witness.function_id)
        .expect("witness id comes from the family");
    let sets = build_fh::<N, Z>(f, &witness.cube, gammas, Semantics::Multiset)?;

    let timed = |ms: &Multiset<Z>| {
        let start = Instant::now();
        let out = solve_subset_sum(ms, method);
        (out, start.elapsed().as_secs_f64() * 1e3)
    };
    let ((cert_f, ms_f), (cert_h, ms_h)) = rayon::join(|| timed(&sets.f), || timed(&sets.h));
    let (cert_f, cert_h) = (cert_f?, cert_h?);

    let expected = u32::try_from(fam.k())
        .ok()
        .and_then(|k| witness.cube.p().checked_pow(k))
        .ok_or_else(|| Error::Overflow(format!("{}^{}", witness.cube.p(), fam.k())))?;
    let solvable_f = cert_f.is_some();
    let solvable_h = cert_h.is_some();
    Ok(ExperimentOutcome::Completed(Box::new(ExperimentReport {
        fh_equal: fh_equal(&sets.f, &sets.h),
        cardinality_ok: sets.f.total_size() == expected,
        f_set: sets.f,
        h_set: sets.h,
        witness,
        method,
        solvable_f,
        solvable_h,
        agreement: solvable_f == solvable_h,
        certificate_f: cert_f,
        certificate_h: cert_h,
        timings_ms: SolveTimings {
            solve_f: ms_f,
            solve_h: ms_h,
        },
    })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_universe, gen_family, FamilyKind, UniverseSpec};

    fn spec() -> UniverseSpec {
        UniverseSpec {
            k: 2,
            grid_bound: 3,
            max_domain_size: 4,
            sample_count: 0,
            seed: 0,
            include_all_cubes: true,
        }
    }

    #[test]
    fn max_family_example() {
        let u = build_universe::<u64>(&spec()).unwrap();
        let fam = gen_family(FamilyKind::Max, &u).unwrap();
        for method in Method::ALL {
            let out =
                run_corollary_experiment::<u64, i64>(&fam, 2, &GammaTriple::default(), method)
                    .unwrap();
            let ExperimentOutcome::Completed(rep) = out else {
                panic!("expected a witness")
            };
            // E = {0,1}: max values (0,1,1,1) -> zigzag (0,1,1,1)
            assert_eq!(rep.witness.function_id, "f0");
            assert_eq!(rep.f_set, [0i64, 1, 1, 1].into_iter().collect());
            assert!(rep.fh_equal && rep.cardinality_ok && rep.agreement);
            assert!(rep.solvable_f && rep.solvable_h);
        }
    }

    #[test]
    fn no_witness_outcome() {
        let u = build_universe::<u64>(&spec()).unwrap();
        let fam = gen_family(FamilyKind::Predmin, &u).unwrap();
        let out =
            run_corollary_experiment::<u64, i64>(&fam, 2, &GammaTriple::default(), Method::Dp)
                .unwrap();
        assert!(matches!(out, ExperimentOutcome::NoWitness { .. }));
    }
}
