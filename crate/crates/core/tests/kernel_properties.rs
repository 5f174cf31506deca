use std::sync::Arc;

use fermiphase_core::kernel::FockMatrix;
use fermiphase_core::{Algebra, Coefficient, GeneratorId, Parity, Poly, SuperElement, Symbol};
use proptest::prelude::*;

type E = SuperElement<Poly>;

const NAMES: [&str; 6] = ["alpha", "alphas", "beta", "betas", "a", "ad"];

fn alg() -> Arc<Algebra> {
    Algebra::phase_space()
}

fn ids(alg: &Algebra) -> Vec<GeneratorId> {
    NAMES.iter().map(|n| alg.lookup(n).unwrap()).collect()
}

fn nbar() -> Poly {
    Poly::symbol(Symbol::real("nbar"))
}

/// Terms `(c₀ + c₁·nbar)·word` with letters indexing `NAMES`.
fn terms(max_letter: usize) -> impl Strategy<Value = Vec<(i64, i64, Vec<usize>)>> {
    prop::collection::vec((-3i64..=3, -2i64..=2, prop::collection::vec(0..max_letter, 0..4)), 0..5)
}

fn build(alg: &Arc<Algebra>, ts: &[(i64, i64, Vec<usize>)], symbolic: bool) -> E {
    let gens = ids(alg);
    let mut x = E::zero(alg);
    for (c0, c1, word) in ts {
        let mut c = Poly::from_i64(*c0);
        if symbolic {
            c = c + Poly::from_i64(*c1) * nbar();
        }
        let w: Vec<GeneratorId> = word.iter().map(|&k| gens[k]).collect();
        x = &x + &E::word(alg, c, &w);
    }
    x
}

fn element(symbolic: bool) -> impl Strategy<Value = E> {
    terms(6).prop_map(move |ts| build(&alg(), &ts, symbolic))
}

fn grassmann_element() -> impl Strategy<Value = E> {
    terms(4).prop_map(|ts| build(&alg(), &ts, false))
}

fn operator_element() -> impl Strategy<Value = E> {
    terms(2).prop_map(|ts| {
        let shifted: Vec<_> = ts.into_iter().map(|(a, b, w)| (a, b, w.into_iter().map(|k| k + 4).collect())).collect();
        build(&alg(), &shifted, true)
    })
}

fn nonzero_ratio() -> impl Strategy<Value = Poly> {
    (prop_oneof![-9i64..=-1, 1i64..=9], 1i64..=9).prop_map(|(n, d)| Poly::from_ratio(n, d))
}

// Jordan–Wigner matrices on five modes: the four Grassmann generators are
// represented by creation operators, the physical mode by the fifth.

const DIM: usize = 32;
type Matrix = Vec<i64>;

fn jw(mode: usize, create: bool) -> Matrix {
    let mut m = vec![0; DIM * DIM];
    for s in 0..DIM {
        let occupied = s >> mode & 1 == 1;
        if occupied == create {
            continue;
        }
        let sign = if (s & ((1 << mode) - 1)).count_ones().is_multiple_of(2) { 1 } else { -1 };
        let t = s ^ (1 << mode);
        m[t * DIM + s] = sign;
    }
    m
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let mut c = vec![0; DIM * DIM];
    for i in 0..DIM {
        for k in 0..DIM {
            let x = a[i * DIM + k];
            if x == 0 {
                continue;
            }
            for j in 0..DIM {
                c[i * DIM + j] += x * b[k * DIM + j];
            }
        }
    }
    c
}

fn identity() -> Matrix {
    let mut m = vec![0; DIM * DIM];
    for i in 0..DIM {
        m[i * DIM + i] = 1;
    }
    m
}

fn represent(x: &E) -> Matrix {
    let alg = x.algebra();
    let gens = ids(alg);
    let images = [jw(0, true), jw(1, true), jw(2, true), jw(3, true), jw(4, false), jw(4, true)];
    let mut out = vec![0; DIM * DIM];
    for (mono, c) in x.terms() {
        let c = c.to_real().expect("integer coefficient") as i64;
        let mut m = identity();
        for g in mono.generators() {
            let k = gens.iter().position(|h| h == g).unwrap();
            m = mat_mul(&m, &images[k]);
        }
        for (o, v) in out.iter_mut().zip(m) {
            *o += c * v;
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn multiplication_is_associative(x in element(true), y in element(true), z in element(true)) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn product_matches_jordan_wigner_matrices(x in element(false), y in element(false)) {
        prop_assert_eq!(represent(&(&x * &y)), mat_mul(&represent(&x), &represent(&y)));
    }

    #[test]
    fn distributive(x in element(true), y in element(true), z in element(true)) {
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
    }

    #[test]
    fn body_is_multiplicative_on_grassmann_elements(x in grassmann_element(), y in grassmann_element()) {
        prop_assert_eq!((&x * &y).body(), x.body() * y.body());
    }

    #[test]
    fn iterated_single_integrals_equal_pair_integral(x in element(true)) {
        let alg = x.algebra().clone();
        let p = alg.pair("alpha").unwrap();
        let iterated = x.integrate_single(p.var).unwrap().integrate_single(p.conj).unwrap();
        prop_assert_eq!(iterated, x.integrate(p));
    }

    #[test]
    fn fock_representation_is_a_homomorphism(x in operator_element(), y in operator_element()) {
        let (mx, my) = (x.to_fock_matrix().unwrap(), y.to_fock_matrix().unwrap());
        prop_assert_eq!((&x * &y).to_fock_matrix().unwrap(), &mx * &my);
        prop_assert_eq!(x.trace().body(), mx.trace());
        prop_assert_eq!((&x * &y).trace(), (&y * &x).trace());
        prop_assert_eq!(FockMatrix::<Poly>::identity().trace(), Poly::from_i64(2));
    }

    #[test]
    fn square_of_odd_grassmann_element_vanishes(x in grassmann_element()) {
        let odd = x.soul();
        let odd_part: E = {
            let alg = odd.algebra().clone();
            let mut out = E::zero(&alg);
            for (m, c) in odd.terms() {
                if m.is_odd() {
                    out = &out + &E::word(&alg, c.clone(), m.generators());
                }
            }
            out
        };
        prop_assert_eq!(&odd_part * &odd_part, E::zero(odd.algebra()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn adjoint_is_an_involution(x in element(true)) {
        prop_assert_eq!(x.adjoint().adjoint(), x);
    }

    #[test]
    fn adjoint_reverses_products(x in element(true), y in element(true)) {
        prop_assert_eq!((&x * &y).adjoint(), &y.adjoint() * &x.adjoint());
    }

    #[test]
    fn change_of_variable_scales_by_inverse_jacobian(x in element(true), p in nonzero_ratio(), q in nonzero_ratio()) {
        // ∫Dα f(pα, qα*) = pq ∫Dα f(α, α*)
        let alg = x.algebra().clone();
        let pair = alg.pair("alpha").unwrap();
        let scaled = x.substitute_linear(&[(pair.var, p.clone(), pair.var), (pair.conj, q.clone(), pair.conj)]).unwrap();
        prop_assert_eq!(scaled.integrate(pair), x.integrate(pair).scale(&(p * q)));
    }

    #[test]
    fn parity_of_products(x in grassmann_element(), y in grassmann_element()) {
        let (px, py) = (x.parity(), y.parity());
        let xy = &x * &y;
        if !xy.is_zero() {
            let expected = match (px, py) {
                (Parity::Even, Parity::Even) | (Parity::Odd, Parity::Odd) => Some(Parity::Even),
                (Parity::Even, Parity::Odd) | (Parity::Odd, Parity::Even) => Some(Parity::Odd),
                _ => None,
            };
            if let Some(e) = expected {
                prop_assert_eq!(xy.parity(), e);
            }
        }
    }
}

#[test]
fn anticommutators_of_all_generator_pairs() {
    let alg = alg();
    let gens = ids(&alg);
    let (a, ad) = (alg.annihilation(), alg.creation());
    for &g in &gens {
        for &h in &gens {
            let (x, y) = (E::generator(&alg, g), E::generator(&alg, h));
            let expected = if (g, h) == (a, ad) || (g, h) == (ad, a) { E::one(&alg) } else { E::zero(&alg) };
            assert_eq!(x.anticommutator(&y).unwrap(), expected, "{{{}, {}}}", alg.name(g), alg.name(h));
        }
    }
}

#[test]
fn oracle_sees_the_anticommutation_relations() {
    let alg = alg();
    let a = E::generator(&alg, alg.annihilation());
    let ad = E::generator(&alg, alg.creation());
    let sum = &(&a * &ad) + &(&ad * &a);
    assert_eq!(represent(&sum), identity());
    assert_eq!(mat_mul(&jw(1, true), &jw(1, true)), vec![0; DIM * DIM]);
}

#[test]
fn mixing_algebras_is_an_error() {
    let other = Algebra::builder().pair("alpha", "alphas").mode("a", "ad").build().unwrap();
    let x = E::generator(&alg(), alg().lookup("alpha").unwrap());
    let y = E::generator(&other, other.lookup("alpha").unwrap());
    assert!(x.checked_mul(&y).is_err());
}
