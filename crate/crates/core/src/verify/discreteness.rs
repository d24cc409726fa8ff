//! Verifiers for the discreteness mechanics: finite solution sets,
//! quasi-regularity failure, semiregularity failure, and isolated
//! points.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::json;

use super::{CheckOptions, ClaimId, Verdict, WitnessReport};
use crate::element::{solve_two_sided, BicyclicElement};
use crate::region::Region;
use crate::topology::Topology;

fn nb(v: u64) -> BigUint {
    BigUint::from(v)
}

fn e(i: u64, j: u64) -> BicyclicElement {
    BicyclicElement::from_u64(i, j)
}

/// The isolation-propagation mechanics: if `(i, j)` is isolated, the
/// neighborhood of any `(m, n)` pinched by
/// `q^i p^m · U(q^m p^n) · q^n p^j ⊆ {q^i p^j}` lies inside the
/// complete finite solution set of `q^i p^m · X · q^n p^j = q^i p^j`.
pub fn thm1_propagate(
    isolated: &BicyclicElement,
    target: &BicyclicElement,
    opt: &CheckOptions,
) -> WitnessReport {
    let mut report = WitnessReport::new(ClaimId::Thm1Propagate);
    report.param("isolated", isolated.to_string());
    report.param("target", target.to_string());
    let a = BicyclicElement::new(isolated.i().clone(), target.i().clone());
    let c = BicyclicElement::new(target.j().clone(), isolated.j().clone());
    let solutions = solve_two_sided(&a, &c, isolated);
    report.param("equation", format!("{a} . X . {c} = {isolated}"));
    report.param("solution_count", solutions.len() as u64);
    if !solutions.contains(target) {
        report.counterexample(
            format!("target={target}"),
            json!({"missing": "target not among the solutions"}),
        );
    }
    for x in &solutions {
        if a.mul(x).mul(&c) != *isolated {
            report.counterexample(format!("x={x}"), json!({"solver": "spurious solution"}));
        }
    }
    if opt.crosscheck {
        let w = crate::oracle::Window::new(60.max(opt.window));
        for (s, t) in w.points() {
            let x = e(s, t);
            let solves = a.mul(&x).mul(&c) == *isolated;
            if solves != solutions.contains(&x) {
                report.counterexample(
                    format!("x={x}"),
                    json!({"window": "brute force disagrees with solver"}),
                );
            }
        }
    }
    report.witness(
        "solutions",
        json!(solutions.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
    );
    report
}

/// Sweep all isolated/target pairs up to `max_index`.
pub fn verify_thm1(max_index: u64, opt: &CheckOptions) -> WitnessReport {
    let mut report = WitnessReport::new(ClaimId::Thm1Propagate);
    report.param("max_index", max_index);
    let mut largest = 0u64;
    let mut idx = 0u64;
    for ii in 0..=max_index {
        for ij in 0..=max_index {
            let isolated = e(ii, ij);
            for ti in 0..=max_index {
                for tj in 0..=max_index {
                    idx += 1;
                    let target = e(ti, tj);
                    let sub = thm1_propagate(
                        &isolated,
                        &target,
                        &CheckOptions {
                            crosscheck: opt.sampled(idx),
                            window: opt.window,
                        },
                    );
                    if sub.verdict != Verdict::Verified {
                        report.verdict = Verdict::Counterexample;
                        report
                            .witnesses
                            .extend(sub.witnesses.into_iter().take(3));
                    }
                    largest = largest.max(sub.parameters["solution_count"].as_u64().unwrap());
                }
            }
        }
    }
    report.param("largest_solution_set", largest);
    report
}

/// Which subspace a quasi-regularity check runs in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubspaceKind {
    /// The down-set of the base point.
    DownSet,
    /// The idempotent diagonal; the base point must be idempotent.
    Idempotents,
}

impl SubspaceKind {
    fn space(&self, x: &BicyclicElement) -> Region {
        match self {
            SubspaceKind::DownSet => x.down_set(),
            SubspaceKind::Idempotents => BicyclicElement::identity().updown_set(),
        }
    }

    fn name(&self) -> &'static str {
        match self {
            SubspaceKind::DownSet => "down_set",
            SubspaceKind::Idempotents => "idempotents",
        }
    }
}

/// Quasi-regularity of the subspace at `x`.
///
/// For the non-discrete instances the verdict `verified` confirms the
/// failure pattern: there is a basic relative neighborhood `U(x)` such
/// that no nonempty relative open `V` has `cl_Y(V) ⊆ U(x)`. The
/// decisive fact is structural — every nonempty relative open contains
/// a trace of some basic neighborhood at one of its points, every such
/// trace contains a tail of the diagonal subspace, and the relative
/// closure of any tail is the whole subspace; the sweep below validates
/// the last two facts symbolically on a window of traces. For the
/// discrete base the verdict confirms quasi-regularity via `V = {x}`.
pub fn quasireg_fail(
    top: Topology,
    kind: SubspaceKind,
    x: &BicyclicElement,
    opt: &CheckOptions,
) -> WitnessReport {
    let mut report = WitnessReport::new(ClaimId::QuasiregFail);
    report.param("topology", top.name());
    report.param("subspace", kind.name());
    report.param("point", x.to_string());
    if kind == SubspaceKind::Idempotents && !x.is_idempotent() {
        report.counterexample(
            format!("x={x}"),
            json!({"precondition": "point must be idempotent for the idempotent subspace"}),
        );
        return report;
    }
    let y = kind.space(x);
    debug_assert!(y.member(x));

    if top == Topology::Discrete {
        let v = Region::point(x);
        let cl = top
            .subspace_closure(&y, &v)
            .expect("point lies in the subspace");
        if cl == v {
            report.param("outcome", "quasi_regular");
            report.witness(
                format!("x={x}"),
                json!({"witness_open": "the singleton of x is relatively clopen"}),
            );
        } else {
            report.counterexample(format!("x={x}"), json!({"discrete": "closure not trivial"}));
        }
        return report;
    }

    // A proper basic relative neighborhood of x in Y.
    let offset = x.diag_offset().clone();
    let n0 = match top {
        Topology::Tau1 => &offset + 2u32,
        Topology::Tau2 => BigUint::one(),
        Topology::TauC => {
            let next = match kind {
                SubspaceKind::DownSet => {
                    BicyclicElement::new(x.i() + 1u32, x.j() + 1u32)
                }
                SubspaceKind::Idempotents => {
                    // Some idempotent other than x inside C_n.
                    if x.i().is_zero() {
                        e(1, 1)
                    } else {
                        BicyclicElement::identity()
                    }
                }
            };
            next.i().max(next.j()).clone()
        }
        Topology::Discrete => unreachable!(),
    };
    let u = top.basic(x, &n0).intersect(&y);
    if !u.member(x) || u == y {
        report.counterexample(
            format!("x={x} n0={n0}"),
            json!({"witness_neighborhood": "not a proper relative neighborhood"}),
        );
        return report;
    }
    report.witness(
        format!("U(x) = trace of basic({x}, {n0})"),
        json!({"proper": true}),
    );

    // Validate the structural facts on a window of candidate opens:
    // traces of basic neighborhoods at subspace points have relative
    // closure equal to the whole subspace (hence never inside U).
    let base_offset = match kind {
        SubspaceKind::DownSet => offset.to_u64().unwrap_or(0),
        SubspaceKind::Idempotents => 0,
    };
    let sweep = if opt.crosscheck { 8 } else { 4 };
    let mut checked = 0u64;
    for dm in 0..=sweep {
        let m = base_offset + dm;
        let yk = match kind {
            SubspaceKind::DownSet => BicyclicElement::new(x.i() + dm, x.j() + dm),
            SubspaceKind::Idempotents => e(m, m),
        };
        for k in 0..=sweep {
            let v = top.basic(&yk, &nb(k)).intersect(&y);
            let cl = top
                .subspace_closure(&y, &v)
                .expect("trace lies in the subspace");
            checked += 1;
            if cl != y {
                report.counterexample(
                    format!("V = trace of basic({yk}, {k})"),
                    json!({"relative_closure": "not the whole subspace"}),
                );
            } else if cl.subset(&u) {
                report.counterexample(
                    format!("V = trace of basic({yk}, {k})"),
                    json!({"quasi_regularity": "closure fits inside U(x)"}),
                );
            }
        }
    }
    report.param("outcome", "quasi_regularity_fails");
    report.param("traces_checked", checked);
    report.param(
        "structural_fact",
        "every nonempty relative open contains a diagonal tail, and the relative \
         closure of any tail is the whole subspace",
    );
    report
}

/// The expected regular-open status of `basic(x, n)`: non-discrete
/// instances fail for every `n ≥ 1`; at `n = 0` the neighborhood
/// degenerates (the full space for τ₁ always and for τ_c at the
/// identity; the full down-set when the up-set is trivial for τ₂) and
/// is regular open.
fn expected_regular_open(top: Topology, x: &BicyclicElement, n: u64) -> bool {
    match top {
        Topology::Discrete => true,
        Topology::Tau1 => n == 0,
        Topology::Tau2 => n == 0 && x.diag_offset().is_zero(),
        Topology::TauC => n == 0 && x.is_identity(),
    }
}

/// Semiregularity failure at `x`: no proper basic neighborhood is
/// regular open. The verifier pins the exact exceptional set at
/// `n = 0` and returns `int(cl(basic))` per `n`.
pub fn semireg_fail(top: Topology, x: &BicyclicElement, max_n: u64, opt: &CheckOptions) -> WitnessReport {
    let mut report = WitnessReport::new(ClaimId::SemiregFail);
    report.param("topology", top.name());
    report.param("point", x.to_string());
    report.param("max_n", max_n);
    report.param(
        "exceptional_set",
        "regular open only at n = 0 and only when the basic neighborhood degenerates: \
         tau1 always (the full space), tau2 when min(i, j) = 0 (the full down-set), \
         tauc at the identity (the full space); discrete neighborhoods are all clopen",
    );
    let mut entries = Vec::new();
    for n in 0..=max_n {
        let basic = top.basic(x, &nb(n));
        let icl = top.interior(&top.closure(&basic));
        let regular = icl == basic;
        let expected = expected_regular_open(top, x, n);
        if regular != expected {
            report.counterexample(
                format!("x={x} n={n}"),
                json!({"regular_open": regular, "expected": expected}),
            );
        }
        if opt.crosscheck || n <= 3 {
            entries.push(json!({
                "n": n,
                "regular_open": regular,
                "int_cl": describe_region(top, &icl, x),
            }));
        }
    }
    match top {
        Topology::Discrete => {
            report.param("outcome", "semiregular");
        }
        _ => {
            report.param("outcome", "semiregularity_fails");
        }
    }
    report.witness(format!("x={x}"), json!(entries));
    report
}

/// A compact description of `int(cl(basic))` for the report.
fn describe_region(top: Topology, r: &Region, x: &BicyclicElement) -> String {
    if *r == Region::full() {
        "full space".into()
    } else if *r == x.updown_set() {
        "comparability class of x".into()
    } else if *r == x.down_set() {
        "down-set of x".into()
    } else if top == Topology::Discrete {
        "the basic neighborhood itself".into()
    } else {
        format!("{r}")
    }
}

/// Sweep of quasi-regularity checks over all instances and subspaces.
pub fn verify_quasireg(max_index: u64, opt: &CheckOptions) -> WitnessReport {
    let mut report = WitnessReport::new(ClaimId::QuasiregFail);
    report.param("max_index", max_index);
    let mut merged = 0u64;
    for top in Topology::ALL {
        for i in 0..=max_index {
            for j in 0..=max_index {
                let x = e(i, j);
                let mut kinds = vec![SubspaceKind::DownSet];
                if i == j {
                    kinds.push(SubspaceKind::Idempotents);
                }
                for kind in kinds {
                    let sub = quasireg_fail(top, kind, &x, opt);
                    let expected = if top == Topology::Discrete {
                        "quasi_regular"
                    } else {
                        "quasi_regularity_fails"
                    };
                    let ok = sub.verdict == Verdict::Verified
                        && sub.parameters.get("outcome").and_then(|v| v.as_str())
                            == Some(expected);
                    if !ok {
                        report.verdict = Verdict::Counterexample;
                        report.witnesses.extend(sub.witnesses.into_iter().take(3));
                    }
                    merged += 1;
                }
            }
        }
    }
    report.param("instances", merged);
    report
}

/// Sweep of semiregularity checks.
pub fn verify_semireg(max_index: u64, max_n: u64, opt: &CheckOptions) -> WitnessReport {
    let mut report = WitnessReport::new(ClaimId::SemiregFail);
    report.param("max_index", max_index);
    report.param("max_n", max_n);
    let mut merged = 0u64;
    for top in Topology::ALL {
        for i in 0..=max_index {
            for j in 0..=max_index {
                let x = e(i, j);
                let sub = semireg_fail(top, &x, max_n, opt);
                if sub.verdict != Verdict::Verified {
                    report.verdict = Verdict::Counterexample;
                    report.witnesses.extend(sub.witnesses.into_iter().take(3));
                }
                merged += 1;
            }
        }
    }
    report.param("instances", merged);
    report
}

/// Isolated points, decided exactly per instance. Non-discreteness of
/// the three constructed topologies is what blocks the Baire property:
/// a countable T₁ space with no isolated points cannot be Baire. Only
/// that criterion is exercised; no Baire decision is attempted.
pub fn verify_isolated_points(bound: u64) -> WitnessReport {
    let mut report = WitnessReport::new(ClaimId::IsolatedPoints);
    report.param("bound", bound);
    report.param(
        "criterion",
        "isolated-point criterion: a countable T1 space with no isolated points is not Baire; \
         the verifier decides isolation exactly and draws no further Baire conclusion",
    );
    for top in Topology::ALL {
        let expect = top == Topology::Discrete;
        for i in 0..=bound {
            for j in 0..=bound {
                let x = e(i, j);
                if top.is_isolated(&x) != expect {
                    report.counterexample(
                        format!("topology={top} x={x}"),
                        json!({"isolated": !expect}),
                    );
                }
                // Window confirmation on a few parameters: a basic
                // neighborhood collapses to the point only when discrete.
                for n in [0u64, 1, 5, 12] {
                    let b = top.basic(&x, &nb(n));
                    let singleton = b == Region::point(&x);
                    if singleton != expect {
                        report.counterexample(
                            format!("topology={top} x={x} n={n}"),
                            json!({"basic_is_singleton": singleton}),
                        );
                    }
                }
            }
        }
        report.witness(
            format!("topology={top}"),
            json!({"isolated_points": if expect { "all" } else { "none" }}),
        );
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thm1_examples() {
        let opt = CheckOptions {
            crosscheck: true,
            window: 60,
        };
        let r = thm1_propagate(&e(0, 0), &e(0, 0), &opt);
        assert_eq!(r.verdict, Verdict::Verified);

        let r = thm1_propagate(&e(1, 1), &e(3, 4), &opt);
        assert_eq!(r.verdict, Verdict::Verified);
        assert_eq!(r.parameters["equation"], json!("q p^3 . X . q^4 p = q p"));

        let r = verify_thm1(3, &CheckOptions::default());
        assert_eq!(r.verdict, Verdict::Verified);
    }

    #[test]
    fn quasireg_patterns() {
        let opt = CheckOptions::default();
        let r = quasireg_fail(Topology::Tau2, SubspaceKind::DownSet, &e(1, 2), &opt);
        assert_eq!(r.verdict, Verdict::Verified);
        assert_eq!(r.parameters["outcome"], json!("quasi_regularity_fails"));

        let r = quasireg_fail(Topology::Tau1, SubspaceKind::Idempotents, &e(0, 0), &opt);
        assert_eq!(r.verdict, Verdict::Verified);
        assert_eq!(r.parameters["outcome"], json!("quasi_regularity_fails"));

        let r = quasireg_fail(Topology::Discrete, SubspaceKind::DownSet, &e(2, 5), &opt);
        assert_eq!(r.parameters["outcome"], json!("quasi_regular"));
    }

    #[test]
    fn semireg_patterns() {
        let opt = CheckOptions::default();
        for top in Topology::NON_DISCRETE {
            let r = semireg_fail(top, &e(1, 2), 8, &opt);
            assert_eq!(r.verdict, Verdict::Verified, "{top}");
            assert_eq!(r.parameters["outcome"], json!("semiregularity_fails"));
        }
        let r = semireg_fail(Topology::Discrete, &e(3, 3), 6, &opt);
        assert_eq!(r.parameters["outcome"], json!("semiregular"));
        // The degenerate n = 0 cases are pinned exactly.
        assert!(expected_regular_open(Topology::Tau1, &e(5, 7), 0));
        assert!(expected_regular_open(Topology::Tau2, &e(3, 0), 0));
        assert!(!expected_regular_open(Topology::Tau2, &e(3, 1), 0));
        assert!(expected_regular_open(Topology::TauC, &e(0, 0), 0));
        assert!(!expected_regular_open(Topology::TauC, &e(1, 0), 0));
    }

    #[test]
    fn isolation_report() {
        let r = verify_isolated_points(5);
        assert_eq!(r.verdict, Verdict::Verified);
        assert!(r.parameters["criterion"]
            .as_str()
            .unwrap()
            .contains("isolated-point criterion"));
    }
}
