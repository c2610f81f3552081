//! The acceptance suite: one pass/fail line per criterion, nonzero exit on
//! any failure. Run with `cargo test -p wpolab-core --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;
use wpolab_core::bound_ops::{reduction_identity_check, theta_tilde_op};
use wpolab_core::construct::{mixing_poset, prefix_audit, sierpinskisation, AuditReport};
use wpolab_core::harness::{gen, run_suite, SuiteReport};
use wpolab_core::poset::{all_linear_orders, intersect, FinPoset};
use wpolab_core::{bracket_plus, theta_plus, CnfOrdinal, KOrdinal, OrdinalSet};

const SEED: u64 = 42;

type Outcome = Result<String, String>;

fn o(s: &str) -> CnfOrdinal {
    s.parse().expect("ordinal literal")
}

fn suite(name: &str, cases: u64) -> Outcome {
    let report: SuiteReport = run_suite(name, cases, SEED).map_err(|e| e.to_string())?;
    if report.cases != cases {
        return Err(format!("{name} ran {} of {cases} cases", report.cases));
    }
    match report.failures.first() {
        None => Ok(format!("{name}: {cases} cases")),
        Some(f) => Err(format!(
            "{name}: {} failures, first {} (expected {}, got {})",
            report.failures.len(),
            f.input,
            f.expected,
            f.actual
        )),
    }
}

fn ordinal_laws() -> Outcome {
    // 27^3 exhaustive triples below w^3 with coefficients <= 2, then 1000 random
    suite("ordinal_laws", 27u64.pow(3) + 1000)
}

fn oracle_agreement() -> Outcome {
    suite("oracle_agreement", 256u64.pow(2))
}

fn kappa_kappa() -> Outcome {
    for k in 0..=KOrdinal::MAX_LEVEL {
        let kappa = KOrdinal::omega_k(k);
        let got = theta_plus(&[kappa.clone(), kappa.clone()]).map_err(|e| e.to_string())?;
        if got != kappa.succ() {
            return Err(format!("theta_plus({kappa}, {kappa}) = {got}"));
        }
    }
    Ok(format!("{} cardinals", KOrdinal::MAX_LEVEL + 1))
}

fn beta_omega() -> Outcome {
    let omega = KOrdinal::from(CnfOrdinal::omega());
    for case in 0..1000 {
        let alpha: KOrdinal = gen::infinite_ordinal(&mut gen::case_rng(SEED, case)).into();
        let got = theta_plus(&[omega.clone(), alpha.clone()]).map_err(|e| e.to_string())?;
        if got != alpha.succ() {
            return Err(format!("theta_plus(w, {alpha}) = {got}"));
        }
    }
    Ok("1000 random alpha".into())
}

fn reductions() -> Outcome {
    let bracket = bracket_plus(&theta_tilde_op());
    for case in 0..1000 {
        let rng = &mut gen::case_rng(SEED, case);
        let n = rng.random_range(2..=4);
        let tuple = gen::equipotent_tuple(rng, n);
        let lhs = bracket.eval(&tuple).map_err(|e| e.to_string())?;
        let rhs = theta_plus(&tuple).map_err(|e| e.to_string())?;
        if lhs != rhs {
            return Err(format!(
                "[theta_tilde]+ = {lhs} but theta_plus = {rhs} at {tuple:?}"
            ));
        }
    }
    for n in [2, 3] {
        for case in 0..200 {
            let tuple = gen::equipotent_tuple(&mut gen::case_rng(SEED + n as u64, case), n + 1);
            if !reduction_identity_check(n, &tuple).map_err(|e| e.to_string())? {
                return Err(format!("reduction identity fails at n = {n} on {tuple:?}"));
            }
        }
    }
    Ok("1000 bracket tuples, 200 reductions each for n = 2, 3".into())
}

fn finite_posets() -> Outcome {
    // all 243 labeled posets on at most 4 vertices, then all 24^2 pairs on at most 3
    suite("finite_poset_oracle", 243 + 24 * 24)
}

fn phi_finite() -> Outcome {
    let orders = all_linear_orders(5);
    let mut lengths = OrdinalSet::new();
    for a in &orders {
        for b in &orders {
            let p: FinPoset = intersect(a, b).map_err(|e| e.to_string())?;
            let len = p.length_recursive().map_err(|e| e.to_string())?;
            if len != 5 {
                return Err(format!(
                    "an intersection of two linear orders on 5 has length {len}"
                ));
            }
            lengths.insert(CnfOrdinal::from(len as u64));
        }
    }
    let bound = KOrdinal::from(lengths.sup_plus());
    let five = KOrdinal::from(CnfOrdinal::from(5));
    let theta = theta_plus(&[five.clone(), five]).map_err(|e| e.to_string())?;
    if bound != theta || bound != KOrdinal::from(CnfOrdinal::from(6)) {
        return Err(format!(
            "least strict upper bound {bound}, theta_plus(5, 5) = {theta}"
        ));
    }
    Ok(format!("{} pairs, bound 6", orders.len() * orders.len()))
}

fn audited(label: &str, report: AuditReport) -> Result<(), String> {
    match report.failures().first() {
        None => Ok(()),
        Some(c) => Err(format!(
            "{label}: {} failed: {}",
            c.name,
            c.witness.as_deref().unwrap_or("")
        )),
    }
}

fn sierpinski_audits() -> Outcome {
    for alpha in ["w", "w*2", "w^2+w*3+5"] {
        let p = sierpinskisation(&o(alpha)).map_err(|e| e.to_string())?;
        audited(
            &format!("sierpinskisation({alpha})"),
            prefix_audit(&p, 500, None),
        )?;
    }
    let chain = sierpinskisation(&CnfOrdinal::omega())
        .map_err(|e| e.to_string())?
        .prefix(500);
    if chain.poset().map_err(|e| e.to_string())? != FinPoset::chain(500) {
        return Err("sierpinskisation(w) is not a chain".into());
    }
    Ok("3 audits at 500, identity case a chain".into())
}

fn mixing_audits() -> Outcome {
    for (a, b) in [("1", "1"), ("w", "w"), ("w*2", "w*3")] {
        let p = mixing_poset(&o(a), &o(b)).map_err(|e| e.to_string())?;
        let report = prefix_audit(&p, 1000, Some((3, 3)));
        for check in ["bi_functional", "sections", "projection_monotone"] {
            if report.check(check).is_none() {
                return Err(format!("mixing({a}, {b}): {check} was not run"));
            }
        }
        audited(&format!("mixing({a}, {b})"), report)?;
    }
    Ok("3 audits at 1000 with a 3x3 window".into())
}

fn minoration() -> Outcome {
    // 4 fixed pairs with known certificates, then 100 random pairs
    suite("minoration_meets_theta", 4 + 100)
}

fn majoration_shadow() -> Outcome {
    // 5 fixed triples, then 500 random ones
    suite("majoration_shadow", 5 + 500)
}

struct Criterion {
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

const CRITERIA: [Criterion; 11] = [
    Criterion {
        name: "ordinal laws",
        limit: Some(Duration::from_secs(30)),
        run: ordinal_laws,
    },
    Criterion {
        name: "oracle agreement",
        limit: Some(Duration::from_secs(60)),
        run: oracle_agreement,
    },
    Criterion {
        name: "theta_plus(k, k) = k + 1",
        limit: None,
        run: kappa_kappa,
    },
    Criterion {
        name: "theta_plus(w, a) = a + 1",
        limit: None,
        run: beta_omega,
    },
    Criterion {
        name: "reduction identities",
        limit: None,
        run: reductions,
    },
    Criterion {
        name: "finite poset oracle",
        limit: Some(Duration::from_secs(120)),
        run: finite_posets,
    },
    Criterion {
        name: "two linear orders on 5",
        limit: None,
        run: phi_finite,
    },
    Criterion {
        name: "sierpinskisation audits",
        limit: None,
        run: sierpinski_audits,
    },
    Criterion {
        name: "mixing audits",
        limit: None,
        run: mixing_audits,
    },
    Criterion {
        name: "minoration meets theta_plus",
        limit: None,
        run: minoration,
    },
    Criterion {
        name: "majoration shadow",
        limit: None,
        run: majoration_shadow,
    },
];

fn main() -> ExitCode {
    let mut failed = 0;
    for (i, c) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = (c.run)();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(limit)) = (&outcome, c.limit) {
            if elapsed > limit {
                outcome = Err(format!("took {elapsed:.2?}, limit {limit:?}"));
            }
        }
        match outcome {
            Ok(detail) => println!("[{:>2}] PASS {} ({detail}; {elapsed:.2?})", i + 1, c.name),
            Err(why) => {
                failed += 1;
                println!("[{:>2}] FAIL {} ({why}; {elapsed:.2?})", i + 1, c.name);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        CRITERIA.len() - failed,
        CRITERIA.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
