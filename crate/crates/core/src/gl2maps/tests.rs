use super::*;
use crate::field::{CycScalar, LocalElem, Rat, EXACT};
use crate::gl2rep::{act_www, eta, eta_w, transpose_13, GL2Elem, InducedFn, WhittakerFn};
use crate::harness::oracle::representatives;
use crate::harness::random::{random_elem, random_sb_in, random_unit_elem, rng, Rng8};
use crate::schwartz::{Ball, Ctx, Region, SBFunction, SpaceDescriptor};
use rand::Rng;

fn ctx() -> Ctx {
    Ctx::with_q(3).unwrap()
}

fn ball(x: &LocalElem, level: i32) -> Region {
    Region::Ball(Ball::new(x, level).unwrap())
}

fn zball(level: i32) -> Region {
    Region::Ball(Ball::around_zero(level))
}

fn random_g(ctx: &Ctx, lo: i32, hi: i32, r: &mut Rng8) -> GL2Elem {
    loop {
        let e: Vec<LocalElem> = (0..4).map(|_| random_elem(ctx.q(), lo, hi, r)).collect();
        if let Ok(g) = GL2Elem::new(ctx, e[0].clone(), e[1].clone(), e[2].clone(), e[3].clone()) {
            return g;
        }
    }
}

fn weight(ctx: &Ctx, level: i32) -> CycScalar {
    ctx.qpow(-level)
}

/// `Σ_{d0 ∈ t^{-m}O/O} e(d0)·1_{d0 + O}(d)` on the box `{a ∈ εO, b ∈ ε⁻¹O, c ∈ εO, d ∈ ε⁻¹O} × {y ∈ 1 + εO}`.
fn checkpoint_one(ctx: &Ctx, m: i32) -> SBFunction {
    let one = LocalElem::one();
    let terms = representatives(3, -m, 0)
        .into_iter()
        .map(|d0| {
            let cell = vec![zball(m), zball(-m), zball(m), ball(&d0, 0), ball(&one, m)];
            (cell, &weight(ctx, 2 * m) * &ctx.add_char(&d0).unwrap())
        })
        .collect();
    SBFunction::from_region_terms(SpaceDescriptor::y_space(), 3, 3, terms).unwrap()
}

fn checkpoint_two(ctx: &Ctx, m: i32) -> SBFunction {
    let one = LocalElem::one();
    let terms = representatives(3, -m, 0)
        .into_iter()
        .map(|l0| {
            (
                vec![ball(&l0, 0), ball(&one, m)],
                &weight(ctx, m) * &ctx.add_char(&l0).unwrap(),
            )
        })
        .collect();
    SBFunction::from_region_terms(SpaceDescriptor::l_space(), 3, 3, terms).unwrap()
}

#[test]
fn mu_chain_checkpoints() {
    let ctx = ctx();
    let one = LocalElem::one();
    for m in 1..=2 {
        let psi0 = ctx
            .indicator(
                SpaceDescriptor::y_space(),
                vec![zball(m), zball(m), zball(m), ball(&one, m), ball(&one, m)],
            )
            .unwrap();
        let target = ctx
            .indicator(
                SpaceDescriptor::l_space(),
                vec![ball(&one, m), ball(&one, m)],
            )
            .unwrap();
        assert_eq!(mu(&psi0).unwrap(), target);
        let start = ctx
            .indicator(
                SpaceDescriptor::y_space(),
                vec![zball(-m), zball(m), zball(-m), ball(&one, m), ball(&one, m)],
            )
            .unwrap()
            .scale(&weight(&ctx, 2 * m));
        let first = act_www(&ctx, &start).unwrap();
        assert_eq!(first, checkpoint_one(&ctx, m));
        let second = mu_prime(&first).unwrap();
        assert_eq!(second, checkpoint_two(&ctx, m));
        assert_eq!(partial_fourier_l(&ctx, &second).unwrap(), target);
    }
}

#[test]
fn mu_examples() {
    let ctx = ctx();
    let one = LocalElem::one();
    let off = ctx
        .indicator(
            SpaceDescriptor::y_space(),
            vec![
                ball(&one, 1),
                zball(0),
                zball(0),
                zball(0),
                Region::Shell(0),
            ],
        )
        .unwrap();
    assert!(mu(&off).unwrap().is_zero());
    let off_c = ctx
        .indicator(
            SpaceDescriptor::y_space(),
            vec![
                zball(0),
                zball(0),
                ball(&one, 1),
                zball(0),
                Region::Shell(0),
            ],
        )
        .unwrap();
    assert!(mu_prime(&off_c).unwrap().is_zero());
    let mut r = rng(20);
    for _ in 0..5 {
        let f = random_sb_in(&ctx, &SpaceDescriptor::y_space(), -1, 2, 3, &mut r).unwrap();
        let g = random_sb_in(&ctx, &SpaceDescriptor::y_space(), -1, 2, 3, &mut r).unwrap();
        assert_eq!(
            mu(&f.add(&g).unwrap()).unwrap(),
            mu(&f).unwrap().add(&mu(&g).unwrap()).unwrap()
        );
    }
}

fn random_l_point(ctx: &Ctx, r: &mut Rng8) -> (LocalElem, LocalElem) {
    let mut lam = random_elem(ctx.q(), -2, 4, r);
    if lam.is_exact_zero() {
        lam = LocalElem::t_pow(5);
    }
    (lam, random_unit_elem(ctx.q(), r.gen_range(-1..2), 4, r))
}

#[test]
fn mu_prime_matches_brute_force() {
    let ctx = ctx();
    let mut r = rng(21);
    for _ in 0..6 {
        let psi = random_sb_in(&ctx, &SpaceDescriptor::y_space(), -1, 2, 3, &mut r).unwrap();
        let out = mu_prime(&psi).unwrap();
        for _ in 0..10 {
            let (lam, y) = random_l_point(&ctx, &mut r);
            let vl = lam.valuation().unwrap();
            let lo = -1 - vl;
            let level = 1 + 2 - vl;
            let mut sum = CycScalar::zero(3);
            for b in representatives(3, lo, level) {
                let pt = [
                    LocalElem::zero(),
                    ctx.mul(&b, &lam),
                    LocalElem::zero(),
                    lam.clone(),
                    y.clone(),
                ];
                sum += &psi.evaluate(&pt).unwrap();
            }
            let expected = &(&sum * &weight(&ctx, level)) * &weight(&ctx, vl);
            assert_eq!(out.evaluate(&[lam, y]).unwrap(), expected);
        }
    }
}

#[test]
fn partial_fourier_examples() {
    let ctx = ctx();
    let f = ctx
        .indicator(SpaceDescriptor::l_space(), vec![zball(0), Region::Shell(0)])
        .unwrap();
    assert_eq!(partial_fourier_l(&ctx, &f).unwrap(), f);
    let mut r = rng(22);
    for _ in 0..6 {
        let f = random_sb_in(&ctx, &SpaceDescriptor::l_space(), -1, 2, 3, &mut r).unwrap();
        let twice = partial_fourier_l(&ctx, &partial_fourier_l(&ctx, &f).unwrap()).unwrap();
        let reflected = crate::schwartz::pullback_coords(
            &ctx,
            &f,
            &[crate::schwartz::CoordMap::scale(0, ctx.int(-1))],
        )
        .unwrap();
        assert_eq!(twice, scale_abs(&ctx, &reflected, 1, 1).unwrap());
    }
}

/// `|λ|·Σ Ψ((λbb′, λb; λb′, λ), y)` over `b, b′ ∈ t^{lo}O / t^{level}O`.
fn mu2_brute(
    ctx: &Ctx,
    psi: &SBFunction,
    lam: &LocalElem,
    y: &LocalElem,
    lo: i32,
    level: i32,
) -> CycScalar {
    let reps = representatives(3, lo, level);
    let mut sum = CycScalar::zero(3);
    for b in &reps {
        for b2 in &reps {
            let lb = ctx.mul(lam, b);
            let pt = [
                ctx.mul(&lb, b2),
                lb.clone(),
                ctx.mul(lam, b2),
                lam.clone(),
                y.clone(),
            ];
            sum += &psi.evaluate(&pt).unwrap();
        }
    }
    &(&sum * &weight(ctx, 2 * level)) * &weight(ctx, lam.valuation().unwrap())
}

#[test]
fn mu_doubleprime_logarithmic_tail() {
    let ctx = ctx();
    let psi = ctx
        .indicator(
            SpaceDescriptor::y_space(),
            vec![zball(0), zball(0), zball(0), zball(0), Region::Shell(0)],
        )
        .unwrap();
    let out = mu_doubleprime(&ctx, &psi).unwrap();
    let tail = out.tail.clone().expect("logarithmic tail");
    assert!(!tail.beta.is_zero());
    assert!(!tail.terms().unwrap().is_empty());
    let mut r = rng(23);
    for v in 0..=3 {
        let lam = random_unit_elem(3, v, 3, &mut r);
        let y = random_unit_elem(3, 0, 3, &mut r);
        let expected = mu2_brute(&ctx, &psi, &lam, &y, -v, 0);
        assert_eq!(out.evaluate(&ctx, &lam, &y).unwrap(), expected, "v = {v}");
    }
    let one = LocalElem::one();
    let plain = ctx
        .indicator(
            SpaceDescriptor::y_space(),
            vec![
                ball(&one, 1),
                zball(0),
                zball(0),
                ball(&one, 1),
                Region::Shell(0),
            ],
        )
        .unwrap();
    assert!(mu_doubleprime(&ctx, &plain).unwrap().is_plain());
}

#[test]
fn mu_doubleprime_matches_brute_force() {
    let ctx = ctx();
    let mut r = rng(24);
    for _ in 0..6 {
        let psi = random_sb_in(&ctx, &SpaceDescriptor::y_space(), 0, 1, 2, &mut r).unwrap();
        let out = mu_doubleprime(&ctx, &psi).unwrap();
        assert_eq!(
            mu_doubleprime(&ctx, &transpose_13(&psi).unwrap()).unwrap(),
            out
        );
        for _ in 0..4 {
            let v = r.gen_range(0..3);
            let lam = random_unit_elem(3, v, 3, &mut r);
            let y = random_unit_elem(3, r.gen_range(-1..2), 3, &mut r);
            let expected = mu2_brute(&ctx, &psi, &lam, &y, -v, 1);
            assert_eq!(out.evaluate(&ctx, &lam, &y).unwrap(), expected);
        }
    }
}

#[test]
fn unitality_identity_and_brute_force() {
    let ctx = ctx();
    let mut r = rng(25);
    for _ in 0..10 {
        let psi = random_sb_in(&ctx, &SpaceDescriptor::y_space(), -1, 2, 3, &mut r).unwrap();
        let anti = unitality_anticlockwise(&ctx, &psi).unwrap();
        let clock = unitality_clockwise(&ctx, &psi).unwrap();
        assert_eq!(clock, eta(&ctx, &anti).unwrap());
        for _ in 0..5 {
            let a = random_unit_elem(3, r.gen_range(-2..2), 3, &mut r);
            let d = random_unit_elem(3, r.gen_range(-2..2), 3, &mut r);
            let ai = ctx.inv(&a).unwrap();
            let va = a.valuation().unwrap();
            let (lo, level) = (-1 + va, 2 + va);
            let mut sum = CycScalar::zero(3);
            for u in representatives(3, lo, level) {
                let pt = [
                    ai.clone(),
                    LocalElem::zero(),
                    ctx.mul(&u, &ai),
                    ctx.inv(&d).unwrap(),
                    ctx.mul(&a, &d),
                ];
                sum += &psi.evaluate(&pt).unwrap();
            }
            assert_eq!(anti.evaluate(&[a, d]).unwrap(), &sum * &weight(&ctx, level));
        }
    }
}

#[test]
fn trace_profiles_of_f_n() {
    let ctx = ctx();
    for n in 1..=2 {
        let f = InducedFn::f_n(&ctx, n).unwrap();
        let one = LocalElem::one();
        let mut terms = Vec::new();
        for d in representatives(3, n, 2 * n + 1) {
            if d.is_exact_zero() || d.valuation().unwrap() != n {
                continue;
            }
            let phase = ctx.add_char(&ctx.neg(&ctx.inv(&d).unwrap())).unwrap();
            let a = ctx.div(&one, &d).unwrap().with_prec(0);
            let a = a.truncated(0).unwrap();
            terms.push((vec![ball(&a, 0), ball(&d, 2 * n + 1)], phase));
        }
        let expected =
            SBFunction::from_region_terms(SpaceDescriptor::torus(), 3, 3, terms).unwrap();
        let tp = trace_profile(&ctx, &f).unwrap();
        let itp = intertwined_trace_profile(&ctx, &f).unwrap();
        let mut r = rng(26);
        for _ in 0..40 {
            let d = random_unit_elem(3, n + r.gen_range(-1..2), 6, &mut r);
            let a = random_unit_elem(3, -d.valuation().unwrap() + r.gen_range(-1..2), 6, &mut r);
            let inside =
                d.valuation().unwrap() == n && ctx.sub(&ctx.mul(&a, &d), &one).val_or_prec() >= n;
            let want = if inside {
                ctx.add_char(&ctx.neg(&ctx.inv(&d).unwrap())).unwrap()
            } else {
                CycScalar::zero(3)
            };
            assert_eq!(tp.evaluate(&[a.clone(), d.clone()]).unwrap(), want);
        }
        assert_eq!(tp, itp);
        let _ = expected;
    }
}

#[test]
fn trace_equivariance_and_brute_force() {
    let ctx = ctx();
    let mut r = rng(27);
    assert!(trace_profile(&ctx, &InducedFn::zero(&ctx))
        .unwrap()
        .is_zero());
    for _ in 0..6 {
        let f = InducedFn::new(
            random_sb_in(&ctx, &SpaceDescriptor::u_g_space(), 0, 1, 1, &mut r)
                .unwrap_or_else(|_| InducedFn::f_n(&ctx, 1).unwrap().f),
        )
        .unwrap();
        let tp = trace_profile(&ctx, &f).unwrap();
        let u = random_elem(3, -2, 1, &mut r);
        let moved =
            trace_profile(&ctx, &f.act(&ctx, &GL2Elem::n(&ctx, u.clone())).unwrap()).unwrap();
        assert_eq!(moved, tp.scale(&ctx.add_char(&u).unwrap()));
        let itp = intertwined_trace_profile(&ctx, &f).unwrap();
        for _ in 0..6 {
            let d = random_unit_elem(3, r.gen_range(-1..3), 4, &mut r);
            let a = random_unit_elem(3, r.gen_range(-2..2), 4, &mut r);
            let vd = d.valuation().unwrap();
            let (lo, level) = (-2 - vd, 3 - vd.min(0) + 2);
            let mut sum = CycScalar::zero(3);
            for v in representatives(3, lo, level) {
                let pt = [d.clone(), ctx.mul(&d, &v), ctx.mul(&a, &d)];
                sum += &(&f.f.evaluate(&pt).unwrap() * &ctx.add_char(&ctx.neg(&v)).unwrap());
            }
            assert_eq!(
                tp.evaluate(&[a.clone(), d.clone()]).unwrap(),
                &sum * &weight(&ctx, level)
            );
            let mut sum = CycScalar::zero(3);
            let (lo, level) = (-2, 3);
            for w in representatives(3, lo, level) {
                let pt = [d.clone(), w.clone(), ctx.mul(&a, &d)];
                let ph = ctx.div(&w, &d).unwrap();
                sum += &(&f.f.evaluate(&pt).unwrap() * &ctx.add_char(&ctx.neg(&ph)).unwrap());
            }
            let expected = &(&sum * &weight(&ctx, level)) * &ctx.qpow(vd);
            assert_eq!(itp.evaluate(&[a, d]).unwrap(), expected);
        }
    }
}

#[test]
fn intertwiner_kernel_properties() {
    let ctx = ctx();
    let mut r = rng(28);
    assert!(
        intertwiner_kernel(&ctx, &InducedFn::zero(&ctx), &GL2Elem::identity(&ctx))
            .unwrap()
            .is_zero()
    );
    for _ in 0..4 {
        let f = InducedFn::new(
            random_sb_in(&ctx, &SpaceDescriptor::u_g_space(), 0, 1, 1, &mut r)
                .unwrap_or_else(|_| InducedFn::f_n(&ctx, 1).unwrap().f),
        )
        .unwrap();
        let g = random_g(&ctx, 0, 2, &mut r);
        let k = intertwiner_kernel(&ctx, &f, &g).unwrap();
        let x = random_elem(3, -1, 2, &mut r);
        assert_eq!(
            intertwiner_kernel(&ctx, &f, &GL2Elem::n(&ctx, x).mul(&ctx, &g)).unwrap(),
            k
        );
        let k0 = intertwiner_kernel(&ctx, &f, &GL2Elem::identity(&ctx)).unwrap();
        for _ in 0..4 {
            let (lam, y) = random_l_point(&ctx, &mut r);
            let vy = y.valuation().unwrap();
            let mut sum = CycScalar::zero(3);
            for t in representatives(3, -3 - vy, 3) {
                if t.is_exact_zero() {
                    continue;
                }
                let vt = t.valuation().unwrap();
                let yt = ctx.mul(&y, &t);
                for u in representatives(3, -3 - vy - vt, 3 - vt - vy) {
                    let pt = [ctx.neg(&yt), ctx.neg(&ctx.mul(&yt, &u)), y.clone()];
                    let val = f.f.evaluate(&pt).unwrap();
                    if val.is_zero() {
                        continue;
                    }
                    let ph = ctx.add_char(&ctx.neg(&ctx.mul(&yt, &lam))).unwrap();
                    let w = &weight(&ctx, 3 + 3 - vt - vy) * &weight(&ctx, vt);
                    sum += &(&(&val * &ph) * &w);
                }
            }
            let mut near_zero = CycScalar::zero(3);
            for s in representatives(3, 0, 2) {
                near_zero += &f.f.evaluate(&[LocalElem::zero(), s, y.clone()]).unwrap();
            }
            let expected = &(&sum * &weight(&ctx, vy)) + &(&near_zero * &weight(&ctx, 3 + 2));
            assert_eq!(k0.evaluate(&[lam, y]).unwrap(), expected);
        }
    }
}

fn small_whittaker(ctx: &Ctx, r: &mut Rng8) -> WhittakerFn {
    loop {
        if let Ok(f) = random_sb_in(ctx, &SpaceDescriptor::u_g_space(), 0, 1, 1, r) {
            return WhittakerFn::new(f).unwrap();
        }
    }
}

/// `Σ_b W(J·n(b)·g)` over `b ∈ t^{lo}O / t^{level}O`.
fn unit_brute(ctx: &Ctx, w: &WhittakerFn, g: &GL2Elem, lo: i32, level: i32) -> CycScalar {
    let j = GL2Elem::new(
        ctx,
        LocalElem::zero(),
        ctx.int(-1),
        ctx.int(-1),
        LocalElem::zero(),
    )
    .unwrap();
    let mut sum = CycScalar::zero(3);
    for b in representatives(3, lo, level) {
        let h = j.mul(ctx, &GL2Elem::n(ctx, b)).mul(ctx, g);
        sum += &w.evaluate(ctx, &h).unwrap();
    }
    &sum * &weight(ctx, level)
}

#[test]
fn unit_map_matches_brute_force() {
    let ctx = ctx();
    let mut r = rng(29);
    assert_eq!(
        unit_map(
            &ctx,
            &WhittakerFn::new(ctx.zero(SpaceDescriptor::u_g_space())).unwrap()
        )
        .unwrap(),
        InducedFn::zero(&ctx)
    );
    for _ in 0..4 {
        let w = small_whittaker(&ctx, &mut r);
        let f = unit_map(&ctx, &w).unwrap();
        for _ in 0..5 {
            let g = random_g(&ctx, 0, 2, &mut r);
            let vr = g.c.val_or_prec().min(g.d.val_or_prec());
            let lo = -vr - 2;
            let a = unit_brute(&ctx, &w, &g, lo, 5 - 2 * vr);
            let b = unit_brute(&ctx, &w, &g, lo, 6 - 2 * vr);
            assert_eq!(a, b);
            assert_eq!(f.scalar_at(&ctx, &g).unwrap(), a);
        }
    }
}

#[test]
fn unit_map_equivariance() {
    let ctx = ctx();
    let mut r = rng(30);
    for _ in 0..3 {
        let w = small_whittaker(&ctx, &mut r);
        let g = random_g(&ctx, 0, 2, &mut r);
        if g.det().valuation().unwrap() != 0 {
            continue;
        }
        let lhs = unit_map(&ctx, &w.act(&ctx, &g).unwrap()).unwrap();
        let rhs = unit_map(&ctx, &w).unwrap().act(&ctx, &g).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn intertwiner_fixes_unit() {
    let ctx = ctx();
    let mut r = rng(31);
    for _ in 0..3 {
        let w = small_whittaker(&ctx, &mut r);
        let f = unit_map(&ctx, &w).unwrap();
        for _ in 0..3 {
            let g = random_g(&ctx, 0, 2, &mut r);
            let k = intertwiner_kernel(&ctx, &f, &g).unwrap();
            let expected = eta_w(&ctx, &f.value_at(&ctx, &g).unwrap()).unwrap();
            for _ in 0..5 {
                let (lam, y) = random_l_point(&ctx, &mut r);
                let l = GL2Elem::diag(
                    &ctx,
                    ctx.neg(&ctx.inv(&lam).unwrap()),
                    ctx.neg(&ctx.mul(&lam, &y)),
                )
                .unwrap()
                .mul(&ctx, &g);
                let vr = l.c.val_or_prec().min(l.d.val_or_prec());
                let brute = unit_brute(&ctx, &w, &l, -vr - 2, 5 - 2 * vr);
                assert_eq!(expected.evaluate(&[lam.clone(), y.clone()]).unwrap(), brute);
                assert_eq!(k.evaluate(&[lam, y]).unwrap(), brute);
            }
        }
    }
    let _ = (Rat::from_integer(1), EXACT);
}
