use super::*;
use crate::qscalar::Scalar;
use proptest::prelude::*;

fn alg() -> Algebra {
    Algebra::default()
}

fn word(a: &Algebra, ls: &[Letter]) -> Element {
    a.normalize_word(Scalar::one(), ls)
}

fn l(slot: u8) -> Letter {
    Letter::new(slot)
}

fn mono(ls: &[Letter]) -> Monomial {
    ls.iter().fold(Monomial::one(), |m, &x| m.with(x))
}

#[test]
fn coordinate_relations() {
    let a = alg();
    let q = Scalar::q();
    assert_eq!(word(&a, &[l(XM), l(X0)]), Element::term(mono(&[l(X0), l(XM)]), q.clone()));
    assert_eq!(word(&a, &[l(XP), l(X0)]), Element::term(mono(&[l(X0), l(XP)]), q.pow(-1)));
    let lhs = &word(&a, &[l(XP), l(XM)]) - &word(&a, &[l(XM), l(XP)]);
    assert_eq!(lhs, Element::term(mono(&[l(X0), l(X0)]), Scalar::h()));
}

#[test]
fn unreduced_commutator_rule() {
    let a = Algebra::new(Config { radius_reduction: false, ..Config::default() });
    let e = word(&a, &[l(XP), l(XM)]);
    let mut expected = Element::monomial(mono(&[l(XM), l(XP)]));
    expected.add_term(mono(&[l(X0), l(X0)]), Scalar::h());
    assert_eq!(e, expected);
}

#[test]
fn radius_rule() {
    let a = alg();
    let k = (Scalar::s() + Scalar::s_pow(-1)).inv().unwrap();
    let mut expected = Element::term(mono(&[l(R), l(R)]), k.clone());
    expected.add_term(mono(&[l(X0), l(X0)]), -(&k * &Scalar::q()));
    assert_eq!(word(&a, &[l(XM), l(XP)]), expected);
    // q x+ x- - q^-1 x- x+ = h r^2
    let q = Scalar::q();
    let lhs = &word(&a, &[l(XP), l(XM)]).scale(&q) - &word(&a, &[l(XM), l(XP)]).scale(&q.pow(-1));
    assert_eq!(lhs, Element::term(mono(&[l(R), l(R)]), Scalar::h()));
}

#[test]
fn form_square() {
    let a = alg();
    let e = word(&a, &[Letter::xi(1), Letter::xi(1)]);
    assert_eq!(e, Element::term(mono(&[Letter::xi(0), Letter::xi(2)]), Scalar::h()));
    assert_eq!(e.render(), "h * xim*xip");
    assert!(word(&a, &[Letter::xi(0), Letter::xi(0)]).is_zero());
    assert!(word(&a, &[Letter::bxi(2), Letter::bxi(2)]).is_zero());
}

#[test]
fn inverse_x0_rules() {
    let a = alg();
    let q = Scalar::q();
    let x0i = Letter::inverse(X0);
    // x0^-1 ξ- = q^-1 ξ- x0^-1, i.e. ξ- x0^-1 = q x0^-1 ξ-
    let e = word(&a, &[Letter::xi(0), x0i]);
    assert_eq!(e, Element::term(mono(&[x0i, Letter::xi(0)]), q.clone()));
    // ξ0 x0^-1 = q x0^-1 ξ0 - h(q+1) ξ- x0^-2 x+
    let e = word(&a, &[Letter::xi(1), x0i]);
    let tail = word(&a, &[Letter::xi(0), x0i, x0i, l(XP)]);
    let mut expected = Element::term(mono(&[x0i, Letter::xi(1)]), q.clone());
    expected.add_scaled(&tail, &-(Scalar::h() * (&q + &Scalar::one())));
    assert_eq!(e, expected);
    for bar in [false, true] {
        for k in 0..3 {
            let f = if bar { Letter::bxi(k) } else { Letter::xi(k) };
            assert_eq!(word(&a, &[f, l(X0), x0i]), Element::letter(f));
            assert_eq!(word(&a, &[f, x0i, l(X0)]), Element::letter(f));
        }
    }
}

#[test]
fn r_and_lambda_with_forms() {
    let a = alg();
    let q = Scalar::q();
    for i in 0..3 {
        let e = a.mul(&a.r_pow(1), &a.xi(i));
        assert_eq!(e, Element::term(mono(&[l(R), Letter::xi(i)]), Scalar::one()));
        let e = a.mul(&a.xi(i), &a.r_pow(1));
        assert_eq!(e, Element::term(mono(&[l(R), Letter::xi(i)]), q.pow(-1)));
        let e = a.mul(&a.xi(i), &a.lam_pow(1));
        assert_eq!(e, Element::term(mono(&[l(LAM), Letter::xi(i)]), q.clone()));
        // r² ξ = q² ξ r²
        let lhs = a.mul(&a.r_pow(2), &a.xi(i));
        let rhs = a.mul(&a.xi(i), &a.r_pow(2)).scale(&q.pow(2));
        assert_eq!(lhs, rhs);
    }
    let b = Algebra::new(Config { lambda_commutes_with_forms: true, ..Config::default() });
    assert_eq!(b.commutator(&b.xi(0), &b.lam_pow(1)), Element::zero());
}

#[test]
fn x_xi_relations_are_reproduced() {
    let a = alg();
    for rel in crate::rmat::xi_relations() {
        let lhs = a.mul(&a.x(rel.i), &a.xi(rel.j));
        let mut rhs = Element::zero();
        for (k, l, c) in &rel.terms {
            rhs.add_scaled(&a.mul(&a.xi(*k), &a.x(*l)), c);
        }
        assert_eq!(lhs, rhs, "relation x^{} xi^{}", rel.i, rel.j);
    }
}

#[test]
fn grade_split_of_mixed_monomial() {
    let a = alg();
    let e = a.mul(&a.x(2), &a.xi(0));
    let parts = e.grade_split();
    assert_eq!(parts.len(), 1);
    assert!(parts.contains_key(&(0, 1)));
}

#[test]
fn involution_examples() {
    let a = alg();
    assert_eq!(a.star(&a.x(2)), Element::term(Monomial::letter(l(XM)), Scalar::s_pow(-1)));
    assert_eq!(a.star(&a.lam_pow(1)), a.lam_pow(-1));
    assert_eq!(a.star(&a.r_pow(1)), a.r_pow(1));
    for letter in Letter::all() {
        let e = Element::letter(letter);
        assert_eq!(a.star(&a.star(&e)), e, "{letter}");
    }
}

#[test]
fn all_critical_pairs_join() {
    let a = alg();
    let pairs = critical_pairs(&a);
    assert!(pairs.len() > 100);
    let bad: Vec<String> = pairs.iter().filter(|p| !p.joins()).map(|p| p.label()).collect();
    assert!(bad.is_empty(), "non-joining overlaps: {bad:?}");
    assert!(termination_report(&a).ok());
}

#[test]
fn critical_pairs_join_without_radius_reduction() {
    let a = Algebra::new(Config { radius_reduction: false, ..Config::default() });
    assert!(critical_pairs(&a).iter().all(CriticalPair::joins));
}

#[test]
fn radius_is_central_before_lambda() {
    let a = alg();
    for (name, ok) in radius_checks(&a) {
        assert!(ok, "{name}");
    }
}

#[test]
fn low_degree_center_is_trivial() {
    let a = alg();
    let dims = center_kernel_dims(&a, 2);
    for (deg, dim) in dims {
        assert_eq!(dim, usize::from(deg == 0), "degree {deg}");
    }
}

fn letter_strategy() -> impl Strategy<Value = Letter> {
    prop::sample::select(Letter::all())
}

fn monomial_word() -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(letter_strategy(), 0..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn associativity(x in monomial_word(), y in monomial_word(), z in monomial_word()) {
        let a = alg();
        let ex = word(&a, &x);
        let ey = word(&a, &y);
        let ez = word(&a, &z);
        prop_assert_eq!(a.mul(&a.mul(&ex, &ey), &ez), a.mul(&ex, &a.mul(&ey, &ez)));
    }

    #[test]
    fn normal_forms_are_fixed(x in monomial_word()) {
        let a = alg();
        let e = word(&a, &x);
        prop_assert_eq!(a.normalize(&e), e);
    }

    #[test]
    fn grading_is_preserved(x in monomial_word()) {
        let a = alg();
        let deg: i32 = x.iter().map(|l| l.info().degree).sum();
        let fd: u32 = x.iter().map(|l| l.info().form_degree).sum();
        let e = word(&a, &x);
        for (m, _) in e.terms() {
            prop_assert_eq!(m.degree(), deg);
            prop_assert_eq!(m.form_degree(), fd);
        }
    }

    #[test]
    fn involution_is_antimultiplicative(x in monomial_word(), y in monomial_word()) {
        let a = alg();
        let ex = word(&a, &x);
        let ey = word(&a, &y);
        prop_assert_eq!(a.star(&a.mul(&ex, &ey)), a.mul(&a.star(&ey), &a.star(&ex)));
    }
}
