//! Classical facts about Euler characteristics and signatures of complete
//! intersections, checked over the default sweep range.

use cigenera::oracles::{euler_characteristic, signature};
use cigenera::verify::SweepConfig;
use cigenera::{CompleteIntersection, Rational};

fn ci(s: &str) -> CompleteIntersection {
    s.parse().unwrap()
}

fn even_dimensional() -> Vec<CompleteIntersection> {
    SweepConfig::default().intersections().into_iter().filter(|x| x.dim() % 2 == 0).collect()
}

fn signed_signature(x: &CompleteIntersection) -> Rational {
    Rational::sign_power(x.dim() as i64 / 2) * signature(x).unwrap()
}

fn is_signature_exception(x: &CompleteIntersection) -> bool {
    let d = x.degrees();
    d.is_empty() || d == [2] || (x.dim() == 2 && d == [2, 2])
}

#[test]
fn quadric_signatures_alternate() {
    for m in 1..=4u32 {
        let q = ci(&format!("X{}(2)", 2 * m));
        let expect = if m % 2 == 1 { 0 } else { 2 };
        assert_eq!(signature(&q).unwrap(), Rational::from(expect), "{q}");
        assert_eq!(signature(&CompleteIntersection::projective_space(2 * m).unwrap()).unwrap(), Rational::one());
    }
    assert_eq!(signature(&ci("X2(2,2)")).unwrap(), Rational::from(-4));
}

/// Outside the exceptions `(-1)^m sign(X_{2m}) >= 5`; the cubic surface
/// sits exactly on the bound, so the strict form does not hold.
#[test]
fn signed_signature_bound_outside_exceptions() {
    assert_eq!(signature(&ci("X2(3)")).unwrap(), Rational::from(-5));
    let mut on_bound = Vec::new();
    for x in even_dimensional().iter().filter(|x| !is_signature_exception(x)) {
        let s = signed_signature(x);
        assert!(s >= Rational::from(5), "{x}: (-1)^m sign = {s}");
        if s == Rational::from(5) {
            on_bound.push(x.to_string());
        }
    }
    assert_eq!(on_bound, ["X2(3)"]);
}

#[test]
fn signed_signature_is_monotone_in_each_degree() {
    for x in even_dimensional().iter().filter(|x| !x.degrees().is_empty()) {
        for i in 0..x.codim() {
            let mut bumped: Vec<i64> = x.degrees().iter().map(|&d| d as i64).collect();
            bumped[i] += 1;
            let y = CompleteIntersection::normalize(x.dim() as i64, &bumped).unwrap();
            assert!(signed_signature(&y) >= signed_signature(x), "{x} -> {y}");
        }
    }
}

#[test]
fn euler_characteristic_vanishing() {
    assert!(euler_characteristic(&ci("X1(3)")).unwrap().is_zero());
    for n in [1u32, 3, 5, 7] {
        assert!(euler_characteristic(&ci(&format!("X{n}(2,2)"))).unwrap().is_zero());
    }
    for x in SweepConfig::default().intersections() {
        let vanishes = euler_characteristic(&x).unwrap().is_zero();
        let listed = x.to_string() == "X1(3)" || (x.dim() % 2 == 1 && x.degrees() == [2, 2]);
        assert_eq!(vanishes, listed, "{x}");
    }
}
