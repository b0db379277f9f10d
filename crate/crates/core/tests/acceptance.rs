//! Acceptance criteria, one line each. Runs as a plain binary so the
//! verdicts are printed whether or not they pass.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use stretchforge::commands;
use stretchforge::lie::{self, Matrix, MatrixLieAlgebra, Subalgebra};
use stretchforge::linalg;
use stretchforge::models::{self, BoostRotation, BoundaryChart};
use stretchforge::poset::{self, CertificateKind, StretchClass};
use stretchforge::rational::frac;
use stretchforge::report::Status;
use stretchforge::stretch::{
    bracket_commutes_with_pullback, numeric_pullback_check, pullback_analytic, sample_points,
    valuation_profile, valuation_transform_law, CollarField, StretchGerm,
};
use stretchforge::{Rational, Result, TruncatedSeries, Valuation};

struct Outcome {
    passed: bool,
    summary: String,
}

fn outcome(passed: bool, summary: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        passed,
        summary: summary.into(),
    })
}

/// Criterion 1: the Klein-to-Poincaré germ has valuation 2 and leading coefficient
/// 1/2 for n in {2,3,4} at order 8.
fn klein_poincare_valuation() -> Result<Outcome> {
    let mut ok = true;
    for n in 2..=4 {
        let r = commands::cmd_klein_poincare(n, 8)?;
        let d = &r.find("germ_valuation").expect("germ check").details;
        ok &= d["valuation"] == 2 && d["leading_coefficient"] == "1/2" && !r.has_failures();
    }
    outcome(ok, "valuation 2, leading coefficient 1/2, n = 2, 3, 4")
}

/// Criterion 2: tangency and the bracket identity after pulling back by y^p.
fn stretch_regularity() -> Result<Outcome> {
    let order = 8;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut pairs = 0;
    let mut ok = true;
    for n in 2..=3 {
        let chart = BoundaryChart::at_axis(n, 0, order)?;
        let collar = |x: &BoostRotation| models::to_collar(&models::klein_field(x), &chart);
        let generators = commands::generator_collar_fields(n, order)?;
        let random: Vec<(CollarField, CollarField)> = (0..20)
            .map(|_| {
                let x = BoostRotation::random(n, &mut rng);
                let y = BoostRotation::random(n, &mut rng);
                Ok((collar(&x)?, collar(&y)?))
            })
            .collect::<Result<_>>()?;
        for p in [1, 2, 3, 5] {
            for g in &generators {
                let pulled = pullback_analytic(g, p)?;
                ok &= pulled.normal().y_valuation() >= Valuation::Finite(1);
            }
            for (v, w) in &random {
                ok &= bracket_commutes_with_pullback(v, w, p)?;
                pairs += 1;
            }
        }
    }
    outcome(ok, format!("{pairs} random pairs, exact equality"))
}

/// Criterion 3: symbolic versus chain-rule pullback on 50 samples at order 10.
fn numeric_cross_validation() -> Result<Outcome> {
    let order = 10;
    let tol = 1e-9;
    let n = 3;
    let fields = commands::generator_collar_fields(n, order)?;
    let points = sample_points(n, 50, 0, (0.05, 0.5), 0.3);
    let germs = [
        ("y^2", StretchGerm::power(2, 2 * order + 1)?),
        ("y^3", StretchGerm::power(3, 3 * order + 1)?),
        (
            "2y+y^2",
            StretchGerm::new(TruncatedSeries::univariate(64, &[Rational::zero(), frac(2, 1), Rational::one()]))?,
        ),
    ];
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for (_, f) in &germs {
        for v in &fields {
            let c = numeric_pullback_check(v, f, &points, tol)?;
            worst = worst.max(c.max_deviation);
            ok &= c.passed;
        }
    }
    outcome(ok, format!("max deviation {worst:.3e} <= {tol:e}"))
}

/// Criterion 4: valuation profile after pullback follows the exponent law.
fn valuation_law() -> Result<Outcome> {
    let order = 8;
    let mut count = 0;
    let mut ok = true;
    for n in 2..=4 {
        let chart = BoundaryChart::at_axis(n, 0, order)?;
        for x in BoostRotation::basis(n) {
            let klein = models::to_collar(&models::klein_field(&x), &chart)?;
            let poincare = models::to_collar(&models::poincare_field(&x)?, &chart)?;
            for field in [klein, poincare] {
                for p in 1..=5 {
                    let lhs = valuation_profile(&pullback_analytic(&field, p)?);
                    let rhs = valuation_transform_law(&valuation_profile(&field), p);
                    ok &= lhs == rhs;
                    count += 1;
                }
            }
        }
    }
    outcome(ok, format!("{count} field/exponent combinations"))
}

/// Normalizer dimension computed on matrix entries, without structure
/// constants: unknowns are the coordinates `x` of `X` and the coefficients
/// expressing each `[X, H_j]` in the basis of `h`.
fn normalizer_dim_oracle(g: &MatrixLieAlgebra, h: &Subalgebra) -> usize {
    let d = g.dim();
    let hs: Vec<Matrix> = h.span().iter().map(|v| g.element(v)).collect();
    let k = hs.len();
    let m = g.matrix_dim();
    let unknowns = d + k * k;
    let mut rows = Vec::new();
    for (j, hj) in hs.iter().enumerate() {
        let ads: Vec<Matrix> = g.basis().iter().map(|xi| lie::commutator(xi, hj)).collect();
        for r in 0..m {
            for c in 0..m {
                let mut row = vec![Rational::zero(); unknowns];
                for i in 0..d {
                    row[i] = ads[i][r][c].clone();
                }
                for (l, hl) in hs.iter().enumerate() {
                    row[d + j * k + l] = -hl[r][c].clone();
                }
                rows.push(row);
            }
        }
    }
    let kernel = linalg::nullspace(&rows, unknowns);
    let projected: Vec<Vec<Rational>> = kernel.into_iter().map(|v| v[..d].to_vec()).collect();
    linalg::rank(&projected, d)
}

/// Center dimension on matrix entries.
fn center_dim_oracle(g: &MatrixLieAlgebra) -> usize {
    let d = g.dim();
    let m = g.matrix_dim();
    let mut rows = Vec::new();
    for b in g.basis() {
        let ads: Vec<Matrix> = g.basis().iter().map(|xi| lie::commutator(xi, b)).collect();
        for r in 0..m {
            for c in 0..m {
                rows.push((0..d).map(|i| ads[i][r][c].clone()).collect());
            }
        }
    }
    d - linalg::rank(&rows, d)
}

/// Criterion 5: condition (A) proxy on the named pairs and all their products.
fn condition_a() -> Result<Outcome> {
    let mut names: Vec<String> = (2..=5).map(|n| format!("so(1,{n})")).collect();
    names.extend((2..=3).map(|n| format!("se({n})")));
    names.extend((1..=4).map(|n| format!("abelian({n})")));
    let builtins = names.iter().map(|s| lie::builtin(s)).collect::<Result<Vec<_>>>()?;
    let mut ok = true;
    let mut cases = 0;
    for b in &builtins {
        let r = lie::condition_a_proxy(&b.algebra, &b.stabilizer)?;
        let oracle_n = normalizer_dim_oracle(&b.algebra, &b.stabilizer);
        let oracle_z = center_dim_oracle(&b.algebra);
        ok &= r.holds && r.normalizer_dim == oracle_n && r.center_dim == oracle_z;
        cases += 1;
    }
    for (i, a) in builtins.iter().enumerate() {
        for b in &builtins[i..] {
            let (g, h) = lie::direct_product(&a.algebra, &a.stabilizer, &b.algebra, &b.stabilizer)?;
            let r = lie::condition_a_proxy(&g, &h)?;
            let na = lie::normalizer(&a.algebra, &a.stabilizer)?.dim();
            let nb = lie::normalizer(&b.algebra, &b.stabilizer)?.dim();
            ok &= r.holds && r.normalizer_dim == na + nb;
            cases += 1;
        }
    }
    outcome(ok, format!("{cases} pairs including products"))
}

/// Criterion 6: divisibility order on 1..=200.
fn poset_structure() -> Result<Outcome> {
    let sample = poset::enumerate_classes(200)?;
    let axioms = poset::partial_order_axioms(&sample).passed();
    let tightest = (1..=200).all(|k| poset::tightest(&sample[..k]).map(|c| c.p()) == Some(1));
    // b divides a iff some multiple of b equals a
    let oracle = |a: u32, b: u32| (1..=a).any(|m| b * m == a);
    let agree = sample
        .iter()
        .all(|&a| sample.iter().all(|&b| poset::is_tighter(a, b) == oracle(a.p(), b.p())));
    outcome(axioms && tightest && agree, "axioms, tightest and divisibility oracle on 1..=200")
}

/// Criterion 7: certificates for all p, q <= 10 under condition (A).
fn certificates() -> Result<Outcome> {
    let mut ok = true;
    for p in 1..=10 {
        for q in 1..=10 {
            let cert = poset::nonconjugacy_certificate(StretchClass::new(p)?, StretchClass::new(q)?, true);
            let expected = if p == q {
                CertificateKind::Conjugate
            } else {
                CertificateKind::NonConjugate
            };
            ok &= cert.kind == expected;
        }
    }
    outcome(ok, "100 ordered pairs")
}

/// Criterion 8: eigenvalue multiplicities of geodesic symmetries.
fn eigen_multiplicities() -> Result<Outcome> {
    let mut ok = true;
    for m in 2..=4 {
        ok &= models::complex_symmetry_multiplicities(m)? == (2, 2 * m - 2);
    }
    for n in 2..=5 {
        ok &= models::real_symmetry_multiplicities(n)? == (1, n - 1);
    }
    let report = commands::cmd_eigencheck(commands::Space::Complex, 4)?;
    ok &= report.checks.iter().all(|c| c.status == Status::Pass);
    outcome(ok, "complex m = 2..4, real n = 2..5")
}

/// Criterion 9: radial identities for random fields.
fn tangency_identities() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut ok = true;
    for n in 2..=4 {
        for _ in 0..20 {
            let x = BoostRotation::random(n, &mut rng);
            ok &= models::klein_radial_identity(&x)? && models::poincare_radial_identity(&x)?;
        }
    }
    outcome(ok, "60 random elements, Klein and Poincaré")
}

type Criterion = (u32, &'static str, Option<Duration>, fn() -> Result<Outcome>);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (1, "Klein-to-Poincaré valuation", Some(Duration::from_secs(1)), klein_poincare_valuation),
        (2, "stretch regularity", Some(Duration::from_secs(30)), stretch_regularity),
        (3, "numeric cross-validation", Some(Duration::from_secs(10)), numeric_cross_validation),
        (4, "valuation transform law", None, valuation_law),
        (5, "condition (A) proxy", Some(Duration::from_secs(10)), condition_a),
        (6, "poset structure", Some(Duration::from_secs(1)), poset_structure),
        (7, "nonconjugacy certificates", None, certificates),
        (8, "eigenvalue multiplicities", None, eigen_multiplicities),
        (9, "boundary tangency identities", None, tangency_identities),
    ];
    let mut failures = 0;
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let in_time = budget.is_none_or(|b| elapsed <= b);
        let (passed, summary) = match result {
            Ok(o) => (o.passed && in_time, o.summary),
            Err(e) => (false, format!("error: {e}")),
        };
        let limit = budget.map(|b| format!(" (limit {:.0?})", b)).unwrap_or_default();
        println!(
            "criterion {id} {name}: {} [{summary}; {:.2?}{limit}]",
            if passed { "PASS" } else { "FAIL" },
            elapsed
        );
        if !passed {
            failures += 1;
        }
    }
    if failures == 0 {
        println!("acceptance: all 9 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} criteria failed");
        ExitCode::FAILURE
    }
}
