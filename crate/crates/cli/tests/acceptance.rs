//! The ten end-to-end checks the tool must pass, one line of output per
//! criterion. Run with `-- --nocapture` to watch the lines go by; any
//! failure prints the offending checks and fails the test.

use growthlab_cli::verify::{self, Check};

struct Criterion {
    label: &'static str,
    run: fn() -> Vec<Check>,
}

fn both(a: fn() -> Vec<Check>, b: fn() -> Vec<Check>) -> Vec<Check> {
    let mut c = a();
    c.extend(b());
    c
}

fn growth_floor_and_monotonicity() -> Vec<Check> {
    both(verify::growth_floor, verify::transform_monotonicity)
}

#[test]
fn acceptance() {
    let criteria = [
        Criterion {
            label: "paley constants: quadrature matches closed form, P(1) = pi, < 5 s",
            run: verify::paley_constants,
        },
        Criterion {
            label: "kernel mass: transform of constant 1 equals p",
            run: verify::kernel_mass,
        },
        Criterion {
            label: "jensen identity: two-zero form and sine quotient, < 10 s",
            run: verify::jensen_identity,
        },
        Criterion {
            label: "chain order: u(0) <= B <= C <= lnM and C+ <= T <= lnM+ on the catalog",
            run: verify::chain_order,
        },
        Criterion {
            label: "meromorphic characteristic equals shifted mean of sup-log",
            run: verify::sup_log_identity,
        },
        Criterion {
            label: "growth floor on built products and transform monotonicity",
            run: growth_floor_and_monotonicity,
        },
        Criterion {
            label: "kernel inequality margins for the two explicit minorants",
            run: verify::minorant_inequality,
        },
        Criterion {
            label: "canonical products: pair product vs sine quotient, square-zero order",
            run: verify::canonical_products,
        },
        Criterion {
            label: "special functions: ml order 1 is exp, cosh value, fitted order 0.75",
            run: verify::special_functions,
        },
        Criterion {
            label: "zero-free construction: exp * 1/exp has lnM and bound exactly 0",
            run: verify::zero_free_construction,
        },
    ];

    let mut failures = Vec::new();
    for (k, criterion) in criteria.iter().enumerate() {
        let checks = (criterion.run)();
        let failed: Vec<&Check> = checks.iter().filter(|c| !c.passed).collect();
        let status = if failed.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {:2}  {:<75} {status}", k + 1, criterion.label);
        for c in failed {
            println!("              {}: {}", c.name, c.detail);
            failures.push(format!("criterion {}: {}", k + 1, c.name));
        }
    }
    assert!(failures.is_empty(), "failed checks: {failures:#?}");
}
