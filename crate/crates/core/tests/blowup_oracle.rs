//! Multiplicity sequences against explicit blowups in local charts.

mod common;

use proptest::prelude::*;

use common::{blowup_multiplicities, computed, local_chart, oracle};
use zmut_core::cluster::multiplicity_sequence;
use zmut_core::{LatticeVector, LaurentPoly};

fn p(s: &str) -> LaurentPoly {
    s.parse().unwrap()
}

const NAMED: [&str; 8] = [
    "(1+x)^3/(x*y) + 3*(1+x)^2/x + (1+x)*(3+x)*y/x + y^2/x",
    "x^-1*y^-1 + 3*y^-1 + 3*x*y^-1 + x^2*y^-1 + 3*x^-1 + 6 + 4*x + 3*x^-1*y + 3*y + x*y + x^-1*y^2",
    "1+x+2*y+y^2",
    "1+2*x+x^2+y",
    "1 + 3*x + 3*x^2 + x^3 + 2*x^2*y + 2*x^3*y + x^3*y^2",
    "1 + 3*x + 3*x^2 + x^3 + 3*x^2*y + 2*x^3*y + x^3*y^2",
    "x^-1*y^-1 + 3*y^-1 + 3*x*y^-1 + x^2*y^-1 + 3*x^-1 + 3*x^-1*y + x^-1*y^2 + x*y + 5 + 3*x + 3*y",
    "(1+x+y)^3",
];

#[test]
fn named_polynomials_match() {
    for s in NAMED {
        let f = p(s);
        assert_eq!(computed(&f), oracle(&f), "{s}");
    }
}

#[test]
fn beta_bottom_edge_by_hand() {
    let f = p(NAMED[0]);
    assert_eq!(oracle(&f)[0], vec![3, 0, 0]);
}

#[test]
fn pure_edge_power_descends() {
    let f = p("(1+x)^4 + y + x*y");
    let bottom = f.newton_polygon().unwrap().edges().unwrap()[0];
    assert_eq!(
        multiplicity_sequence(&f, &bottom).unwrap(),
        blowup_multiplicities(local_chart(&f, &bottom), 4)
    );
}

fn piece() -> impl Strategy<Value = LaurentPoly> {
    prop::sample::select(vec![
        "1+x",
        "1+y",
        "1+x+y",
        "1+x+2*y+y^2",
        "1+2*x+x^2+y",
        "1+x*y",
        "1+x+x*y",
    ])
    .prop_map(p)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn random_products_with_interior_noise(
        pieces in prop::collection::vec(piece(), 1..4),
        noise in prop::collection::vec((any::<prop::sample::Index>(), -3i64..=3), 0..3),
    ) {
        let mut f = LaurentPoly::one();
        for g in &pieces {
            f = &f * g;
        }
        let newt = f.newton_polygon().unwrap();
        let interior: Vec<LatticeVector> = newt
            .lattice_points()
            .into_iter()
            .filter(|q| newt.edges().map(|es| es.iter().all(|e| e.height(*q) > 0)).unwrap_or(false))
            .collect();
        if !interior.is_empty() {
            for (i, c) in noise {
                let q = *i.get(&interior);
                f = &f + &LaurentPoly::from_int_terms(&[((q.x, q.y), c)]);
            }
        }
        prop_assume!(f.newton_polygon().unwrap().dimension() == 2);
        prop_assert_eq!(computed(&f), oracle(&f));
    }
}
