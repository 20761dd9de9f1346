use super::*;
use crate::field::{CycScalar, LocalElem, Rat, EXACT};
use crate::harness::oracle::{brute_force_integral, brute_force_total, representatives};
use crate::harness::random::{random_elem, random_rat_coeff, random_sb, rng};
use proptest::prelude::*;

fn ctx() -> Ctx {
    Ctx::with_q(3).unwrap()
}

fn ball(c: LocalElem, level: i32) -> Region {
    Region::Ball(Ball::new(&c, level).unwrap())
}

fn zball(level: i32) -> Region {
    Region::Ball(Ball::around_zero(level))
}

fn one_dim() -> SpaceDescriptor {
    SpaceDescriptor::additive(1)
}

fn rat(n: i128, d: i128) -> CycScalar {
    CycScalar::from_rat(3, Rat::new(n, d))
}

#[test]
fn evaluate_examples() {
    let k = ctx();
    let f = k.indicator(one_dim(), vec![zball(0)]).unwrap();
    assert!(f.evaluate(&[LocalElem::zero()]).unwrap().is_one());
    assert!(f.evaluate(&[LocalElem::t_pow(-1)]).unwrap().is_zero());
    let mult = SpaceDescriptor::new(vec![CoordKind::Multiplicative]);
    let g = k.indicator(mult, vec![ball(LocalElem::one(), 1)]).unwrap();
    let x = k.add(&LocalElem::one(), &LocalElem::t_pow(2));
    assert!(g.evaluate(&[x]).unwrap().is_one());
    assert!(f.evaluate(&[LocalElem::zero_to(-1)]).is_err());
}

#[test]
fn refine_examples() {
    let k = ctx();
    let f = k.indicator(one_dim(), vec![zball(0)]).unwrap();
    let pieces = f.refine(&[1]).unwrap();
    assert_eq!(pieces.len(), 3);
    let centers: Vec<LocalElem> = pieces.iter().map(|(b, _)| b[0].center.clone()).collect();
    for a in 0..3 {
        assert!(centers.contains(&LocalElem::from_digits(0, vec![a], EXACT)));
    }
    assert!(pieces.iter().all(|(b, c)| b[0].level == 1 && c.is_one()));
    assert_eq!(f.refine(&[0]).unwrap(), f.ball_terms());
    assert_eq!(f.rebuild(pieces).unwrap(), f);
}

#[test]
fn integrate_examples() {
    let k = ctx();
    let f = k.indicator(one_dim(), vec![zball(2)]).unwrap();
    assert_eq!(f.integral(), rat(1, 9));
    let mult = SpaceDescriptor::new(vec![CoordKind::Multiplicative]);
    let g = k.indicator(mult, vec![Region::Shell(0)]).unwrap();
    assert_eq!(g.integral(), rat(2, 3));
    let h = k
        .indicator(SpaceDescriptor::l_space(), vec![zball(1), Region::Shell(0)])
        .unwrap();
    let part = h.integrate(&[0]).unwrap();
    assert_eq!(
        part,
        k.indicator(
            SpaceDescriptor::new(vec![CoordKind::Multiplicative]),
            vec![Region::Shell(0)]
        )
        .unwrap()
        .scale(&rat(1, 3))
    );
}

#[test]
fn canonical_merging() {
    let k = ctx();
    let kids: Vec<BallTerm> = Ball::around_zero(0)
        .children(3)
        .into_iter()
        .map(|b| (vec![b], k.one_scalar()))
        .collect();
    let f = k.function(one_dim(), kids).unwrap();
    assert_eq!(f, k.indicator(one_dim(), vec![zball(0)]).unwrap());
    let mult = SpaceDescriptor::new(vec![CoordKind::Multiplicative]);
    let units: Vec<BallTerm> = (1..3)
        .map(|a| {
            (
                vec![Ball::new(&LocalElem::monomial(a, 2), 3).unwrap()],
                k.one_scalar(),
            )
        })
        .collect();
    let g = k.function(mult, units).unwrap();
    assert_eq!(g.terms()[0].0, vec![Region::Shell(2)]);
    let z = f.sub(&f).unwrap();
    assert!(z.is_zero());
}

#[test]
fn rejects_invalid_cells() {
    let k = ctx();
    let mult = SpaceDescriptor::new(vec![CoordKind::Multiplicative]);
    assert!(k.indicator(mult, vec![zball(0)]).is_err());
    let ug = SpaceDescriptor::u_g_space();
    assert!(k
        .indicator(ug.clone(), vec![zball(0), zball(0), Region::Shell(0)])
        .is_err());
    assert!(k
        .indicator(
            ug,
            vec![zball(0), ball(LocalElem::one(), 1), Region::Shell(0)]
        )
        .is_ok());
}

#[test]
fn integration_matches_brute_force() {
    let k = ctx();
    let spaces = [
        SpaceDescriptor::additive(1),
        SpaceDescriptor::l_space(),
        SpaceDescriptor::torus(),
    ];
    let mut r = rng(7);
    for trial in 0..30 {
        let space = &spaces[trial % spaces.len()];
        let f = random_sb(&k, space, 2, 3, &mut r).unwrap();
        let exact = f.integral();
        let fine = f.max_levels().into_iter().flatten().max().unwrap_or(0);
        assert_eq!(brute_force_total(&f, fine).unwrap(), exact, "{f}");
        assert_eq!(brute_force_total(&f, fine + 1).unwrap(), exact, "{f}");
        let refined = f
            .rebuild(f.refine(&vec![fine + 1; f.dim()]).unwrap())
            .unwrap();
        assert_eq!(refined, f);
        if f.dim() == 2 {
            assert_eq!(
                brute_force_integral(&f, &[0], fine).unwrap(),
                f.integrate(&[0]).unwrap()
            );
            assert_eq!(
                brute_force_integral(&f, &[1], fine + 1).unwrap(),
                f.integrate(&[1]).unwrap()
            );
        }
    }
}

#[test]
fn pullback_examples() {
    let k = ctx();
    let f = k.indicator(one_dim(), vec![zball(0)]).unwrap();
    let g = pullback_coords(&k, &f, &[CoordMap::scale(0, LocalElem::t_pow(1))]).unwrap();
    assert_eq!(g, k.indicator(one_dim(), vec![zball(-1)]).unwrap());
    let h = pullback_coords(&k, &f, &[CoordMap::shift(0, LocalElem::one())]).unwrap();
    assert_eq!(h, f);
}

fn random_point(q: u32, dim: usize, r: &mut crate::harness::random::Rng8) -> Vec<LocalElem> {
    (0..dim).map(|_| random_elem(q, -2, 5, r)).collect()
}

fn apply(k: &Ctx, m: &[Vec<LocalElem>], x: &[LocalElem]) -> Vec<LocalElem> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .fold(LocalElem::zero(), |acc, (a, b)| k.add(&acc, &k.mul(a, b)))
        })
        .collect()
}

#[test]
fn linear_pullback_matches_pointwise() {
    let k = ctx();
    let space = SpaceDescriptor::additive(3);
    let mut r = rng(11);
    let mut done = 0;
    while done < 20 {
        let m: Vec<Vec<LocalElem>> = (0..3)
            .map(|_| (0..3).map(|_| random_elem(3, -1, 2, &mut r)).collect())
            .collect();
        let f = random_sb(&k, &space, 2, 3, &mut r).unwrap();
        let g = match pullback_linear(&k, &f, &[0, 1, 2], &m) {
            Ok(g) => g,
            Err(crate::Error::SingularMap(_)) => continue,
            Err(e) => panic!("{e}"),
        };
        for _ in 0..20 {
            let x = random_point(3, 3, &mut r);
            assert_eq!(
                g.evaluate(&x).unwrap(),
                f.evaluate(&apply(&k, &m, &x)).unwrap()
            );
        }
        done += 1;
    }
}

#[test]
fn affine_pullback_matches_pointwise() {
    let k = ctx();
    let space = SpaceDescriptor::l_space();
    let mut r = rng(12);
    for _ in 0..20 {
        let f = random_sb(&k, &space, 2, 3, &mut r).unwrap();
        let a = crate::harness::random::random_unit_elem(3, r.gen_range(-1..2), 2, &mut r);
        let b = random_elem(3, -1, 2, &mut r);
        let s = crate::harness::random::random_unit_elem(3, r.gen_range(-1..2), 1, &mut r);
        let g = pullback_coords(
            &k,
            &f,
            &[
                CoordMap {
                    coord: 0,
                    a: a.clone(),
                    b: b.clone(),
                },
                CoordMap::scale(1, s.clone()),
            ],
        )
        .unwrap();
        for _ in 0..20 {
            let x = random_elem(3, -2, 5, &mut r);
            let y = crate::harness::random::random_unit_elem(3, r.gen_range(-2..3), 5, &mut r);
            let lhs = g.evaluate(&[x.clone(), y.clone()]).unwrap();
            let rhs = f
                .evaluate(&[k.add(&k.mul(&a, &x), &b), k.mul(&s, &y)])
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

use rand::Rng;

#[test]
fn modulate_examples() {
    let k = ctx();
    let f = k.indicator(one_dim(), vec![zball(-1)]).unwrap();
    assert_eq!(modulate(&k, &f, &Poly::zero(1)).unwrap(), f);
    let g = modulate(&k, &f, &Poly::var(1, 0)).unwrap();
    assert_eq!(g.terms().len(), 3);
    for c in 0..3u32 {
        let center = LocalElem::monomial(c, -1);
        assert_eq!(g.evaluate(&[center]).unwrap(), CycScalar::zeta(3, c as i64));
    }
    assert!(g
        .terms()
        .iter()
        .any(|(c, v)| c == &vec![zball(0)] && v.is_one()));
    let back = modulate(&k, &g, &Poly::var(1, 0).neg(&k)).unwrap();
    assert_eq!(back, f);
}

#[test]
fn modulate_budget_is_enforced() {
    let mut k = ctx();
    k.budget = 2;
    let f = k.indicator(one_dim(), vec![zball(-4)]).unwrap();
    let r = modulate(&k, &f, &Poly::var(1, 0));
    assert!(matches!(r, Err(crate::Error::RefinementBudgetExceeded(_))));
}

#[test]
fn fourier_examples() {
    let k = ctx();
    let f = k.indicator(one_dim(), vec![zball(0)]).unwrap();
    assert_eq!(fourier(&k, &f, 0).unwrap(), f);
    let g = k.indicator(one_dim(), vec![zball(1)]).unwrap();
    let expect = k
        .indicator(one_dim(), vec![zball(-1)])
        .unwrap()
        .scale(&rat(1, 3));
    assert_eq!(fourier(&k, &g, 0).unwrap(), expect);
}

/// `∫ f(x) e(−xξ) dx` by summation at a fine level.
fn brute_fourier_at(k: &Ctx, f: &SBFunction, xi: &LocalElem, level: i32) -> CycScalar {
    let mut s = k.zero_scalar();
    for x in representatives(3, -2, level) {
        let v = f.evaluate(&[x.clone()]).unwrap();
        if !v.is_zero() {
            s += &(&v * &k.add_char(&k.neg(&k.mul(&x, xi))).unwrap());
        }
    }
    s.scale(crate::field::QPower(-level).to_rat(3))
}

#[test]
fn fourier_matches_character_sums() {
    let k = ctx();
    let mut r = rng(5);
    for _ in 0..10 {
        let f = random_sb(&k, &one_dim(), 2, 3, &mut r).unwrap();
        let g = fourier(&k, &f, 0).unwrap();
        for _ in 0..10 {
            let xi = random_elem(3, -3, 2, &mut r);
            assert_eq!(
                g.evaluate(&[xi.clone()]).unwrap(),
                brute_fourier_at(&k, &f, &xi, 3)
            );
        }
    }
}

#[test]
fn fourier_involution_and_parseval() {
    let k = ctx();
    let mut r = rng(9);
    let space = SpaceDescriptor::l_space();
    for _ in 0..25 {
        let f = random_sb(&k, &space, 2, 3, &mut r).unwrap();
        let ff = fourier(&k, &fourier(&k, &f, 0).unwrap(), 0).unwrap();
        let refl = pullback_coords(&k, &f, &[CoordMap::scale(0, k.int(-1))]).unwrap();
        assert_eq!(ff, refl);
        let terms: Vec<(Vec<Region>, CycScalar)> = f
            .terms()
            .iter()
            .map(|(c, _)| (c.clone(), random_rat_coeff(3, &mut r)))
            .collect();
        let f1 = SBFunction::from_region_terms(space.clone(), 3, 3, terms).unwrap();
        let g1 = random_sb(&k, &space, 2, 2, &mut r).unwrap();
        let g1 = SBFunction::from_region_terms(
            space.clone(),
            3,
            3,
            g1.terms()
                .iter()
                .map(|(c, _)| (c.clone(), random_rat_coeff(3, &mut r)))
                .collect(),
        )
        .unwrap();
        let g_refl = pullback_coords(&k, &g1, &[CoordMap::scale(0, k.int(-1))]).unwrap();
        let lhs = f1.mul(&g_refl).unwrap().integral();
        let rhs = fourier(&k, &f1, 0)
            .unwrap()
            .mul(&fourier(&k, &g1, 0).unwrap())
            .unwrap()
            .integral();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn fourier_is_linear() {
    let k = ctx();
    let mut r = rng(21);
    for _ in 0..20 {
        let f = random_sb(&k, &one_dim(), 2, 2, &mut r).unwrap();
        let g = random_sb(&k, &one_dim(), 2, 2, &mut r).unwrap();
        let lhs = fourier(&k, &f.add(&g).unwrap(), 0).unwrap();
        let rhs = fourier(&k, &f, 0)
            .unwrap()
            .add(&fourier(&k, &g, 0).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn fourier_m2_lattice_is_fixed() {
    let k = ctx();
    let f = k
        .indicator(
            SpaceDescriptor::y_space(),
            vec![zball(0), zball(0), zball(0), zball(0), Region::Shell(0)],
        )
        .unwrap();
    assert_eq!(
        fourier_m2(&k, &f, [0, 1, 2, 3], &YScale::Coord(4)).unwrap(),
        f
    );
}

#[test]
fn fourier_m2_dual_box() {
    let k = ctx();
    for m in 1..=2 {
        let eps = |s: i32| zball(s * m);
        let unit = || ball(LocalElem::one(), m);
        let cm = k.qpow(-2 * m);
        let a_in = ball(k.int(-1), m);
        let f = SBFunction::indicator(
            SpaceDescriptor::y_space(),
            3,
            vec![a_in, eps(-1), eps(1), eps(-1), unit()],
            cm.clone(),
        )
        .unwrap();
        let out = fourier_m2(&k, &f, [0, 1, 2, 3], &YScale::Coord(4)).unwrap();
        let boxf = SBFunction::indicator(
            SpaceDescriptor::y_space(),
            3,
            vec![eps(1), eps(-1), eps(1), eps(-1), unit()],
            cm,
        )
        .unwrap();
        let expect = modulate(&k, &boxf, &Poly::var(5, 3)).unwrap();
        assert_eq!(out, expect);
    }
}

#[test]
fn fourier_m2_twice_is_reflection() {
    let k = ctx();
    let space = SpaceDescriptor::additive(4);
    let mut r = rng(31);
    for _ in 0..10 {
        let f = crate::harness::random::random_sb_in(&k, &space, 0, 1, 2, &mut r).unwrap();
        let y = YScale::Const(LocalElem::one());
        let twice = fourier_m2(
            &k,
            &fourier_m2(&k, &f, [0, 1, 2, 3], &y).unwrap(),
            [0, 1, 2, 3],
            &y,
        )
        .unwrap();
        let neg = k.int(-1);
        let sigma: Vec<Vec<LocalElem>> = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| {
                        if i == j {
                            neg.clone()
                        } else {
                            LocalElem::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        assert_eq!(
            twice,
            pullback_linear(&k, &f, &[0, 1, 2, 3], &sigma).unwrap()
        );
    }
}

#[test]
fn serialization_round_trip() {
    let k = ctx();
    let mut r = rng(3);
    for _ in 0..10 {
        let f = random_sb(&k, &SpaceDescriptor::u_g_space(), 2, 3, &mut r).unwrap();
        assert_eq!(SBFunction::from_json(&f.to_json()).unwrap(), f);
        assert_eq!(f.to_text(), f.clone().to_text());
    }
    let f = k
        .indicator(
            one_dim(),
            vec![ball(LocalElem::from_digits(-1, vec![2, 1], EXACT), 1)],
        )
        .unwrap();
    assert_eq!(
        f.to_text(),
        "space A\nfield q=3 p=3\ncell B[-1:2.1|1] :: 1,0\n"
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn canonical_form_is_idempotent(seed in any::<u64>()) {
        let k = ctx();
        let f = random_sb(&k, &SpaceDescriptor::y_space(), 2, 4, &mut rng(seed)).unwrap();
        let again = SBFunction::from_region_terms(f.space().clone(), 3, 3, f.terms().to_vec()).unwrap();
        prop_assert_eq!(&again, &f);
        prop_assert_eq!(f.rebuild(f.ball_terms()).unwrap(), f);
    }

    #[test]
    fn canonical_cells_are_disjoint(seed in any::<u64>()) {
        let k = ctx();
        let f = random_sb(&k, &SpaceDescriptor::l_space(), 2, 4, &mut rng(seed)).unwrap();
        let balls = f.ball_terms();
        for (i, (a, _)) in balls.iter().enumerate() {
            for (b, _) in &balls[i + 1..] {
                prop_assert!(a.iter().zip(b).any(|(x, y)| x.disjoint(y)));
            }
        }
    }

    #[test]
    fn addition_is_pointwise(seed in any::<u64>()) {
        let k = ctx();
        let mut r = rng(seed);
        let f = random_sb(&k, &SpaceDescriptor::l_space(), 2, 3, &mut r).unwrap();
        let g = random_sb(&k, &SpaceDescriptor::l_space(), 2, 3, &mut r).unwrap();
        let s = f.add(&g).unwrap();
        let prod = f.mul(&g).unwrap();
        for _ in 0..10 {
            let x = random_elem(3, -2, 4, &mut r);
            let y = crate::harness::random::random_unit_elem(3, r.gen_range(-2..3), 4, &mut r);
            let pt = [x, y];
            prop_assert_eq!(s.evaluate(&pt).unwrap(), &f.evaluate(&pt).unwrap() + &g.evaluate(&pt).unwrap());
            prop_assert_eq!(prod.evaluate(&pt).unwrap(), &f.evaluate(&pt).unwrap() * &g.evaluate(&pt).unwrap());
        }
    }
}
