//! The check registry.

use super::fixtures::*;
use super::oracle::{brute_force_integral, brute_force_total};
use super::random::{random_elem, random_rat_coeff, random_sb, random_sb_in, rng, Rng8};
use super::report::{CheckReport, CheckSpec, Failure, Status};
use crate::error::{Error, Result};
use crate::field::{CycScalar, LocalElem, LocalField};
use crate::gl2maps::{
    intertwined_trace_profile, intertwiner_kernel, mu, mu_doubleprime, mu_prime, partial_fourier_l,
    trace_profile, unit_map, unitality_anticlockwise, unitality_clockwise, L2Elem,
};
use crate::gl2rep::GenWord;
use crate::gl2rep::{
    act_mid, act_mid_gen, act_slot1, act_slot3, act_www, eta, eta_w, t_act, transpose_13, GL2Elem,
    Gen, InducedFn, TModuleTag,
};
use crate::schwartz::{
    first_diff, fourier, fourier_m2, pullback_coords, pullback_linear, Ball, CoordMap, Ctx, Region,
    SBFunction, SpaceDescriptor, YScale,
};
use rand::Rng;
use std::time::Instant;

/// Comparisons made within one trial.
#[derive(Default)]
struct Cmp(Vec<(String, String, String)>);

impl Cmp {
    fn texts(&mut self, what: &str, lhs: String, rhs: String) {
        if lhs != rhs {
            self.0.push((what.to_string(), lhs, rhs));
        }
    }

    fn f(&mut self, what: &str, lhs: &SBFunction, rhs: &SBFunction) {
        if lhs != rhs {
            self.0
                .push((what.to_string(), lhs.to_text(), rhs.to_text()));
        }
    }

    fn s(&mut self, what: &str, lhs: &CycScalar, rhs: &CycScalar) {
        if lhs != rhs {
            self.0
                .push((what.to_string(), lhs.to_string(), rhs.to_string()));
        }
    }

    fn l2(&mut self, what: &str, lhs: &L2Elem, rhs: &L2Elem) {
        if lhs != rhs {
            self.0
                .push((what.to_string(), lhs.to_text(), rhs.to_text()));
        }
    }
}

struct Runner {
    ctx: Ctx,
    rng: Rng8,
    levels: i32,
    trials: usize,
    failures: Vec<Failure>,
}

impl Runner {
    /// Runs one trial; errors become failures carrying the reproducer.
    fn trial(&mut self, input: &str, body: impl FnOnce(&Ctx, &mut Cmp) -> Result<()>) {
        self.trials += 1;
        let mut cmp = Cmp::default();
        let outcome = body(&self.ctx, &mut cmp);
        for (what, lhs, rhs) in cmp.0 {
            let first_diff = first_diff(&lhs, &rhs);
            self.failures.push(Failure {
                input: format!("{input}# {what}\n"),
                lhs,
                rhs,
                first_diff,
            });
        }
        if let Err(e) = outcome {
            self.failures.push(Failure {
                input: input.to_string(),
                lhs: format!("error: {e}"),
                rhs: String::new(),
                first_diff: None,
            });
        }
    }
}

/// Executes a registered check.
pub fn run_check(spec: &CheckSpec) -> Result<CheckReport> {
    let start = Instant::now();
    let p = &spec.params;
    let ctx = Ctx::new(LocalField::with_q(p.q)?, p.budget);
    let mut run = Runner {
        ctx,
        rng: rng(p.seed),
        levels: p.levels,
        trials: 0,
        failures: Vec::new(),
    };
    let n = p.trials;
    match spec.name.as_str() {
        "fourier-involution" => fourier_involution(&mut run, n),
        "parseval" => parseval(&mut run, n),
        "action-laws" => action_laws(&mut run, n),
        "mu-equivariance" => mu_equivariance(&mut run, n),
        "mu-chain" => mu_chain(&mut run, spec)?,
        "unitality" => unitality(&mut run, n),
        "associativity-symmetry" => associativity(&mut run, n),
        "intertwiner-trace" => intertwiner_trace(&mut run),
        "intertwiner-unit" => intertwiner_unit(&mut run, n),
        "oracle-integration" => oracle_integration(&mut run, n),
        other => return Err(Error::UnknownCheck(other.to_string())),
    }
    let status = if run.failures.is_empty() {
        Status::Pass
    } else {
        Status::Fail
    };
    Ok(CheckReport {
        check: spec.name.clone(),
        mode: spec.mode(),
        params: p.clone(),
        trials: run.trials,
        failures: run.failures,
        elapsed_ms: start.elapsed().as_millis(),
        status,
    })
}

fn reflect(ctx: &Ctx, f: &SBFunction, coord: usize) -> Result<SBFunction> {
    pullback_coords(ctx, f, &[CoordMap::scale(coord, ctx.int(-1))])
}

fn fourier_involution(run: &mut Runner, trials: usize) {
    if trials > 0 {
        run.trial("1_O on F\n", |ctx, c| {
            let one_o = ctx.indicator(
                SpaceDescriptor::additive(1),
                vec![Region::Ball(Ball::around_zero(0))],
            )?;
            c.f("fourier(1_O) = 1_O", &fourier(ctx, &one_o, 0)?, &one_o);
            Ok(())
        });
    }
    for i in 0..trials {
        let (space, lo) = if i % 2 == 0 {
            (SpaceDescriptor::additive(1), -1)
        } else {
            (SpaceDescriptor::l_space(), -1)
        };
        let f = random_sb_in(&run.ctx, &space, lo, run.levels, 1 + i % 3, &mut run.rng);
        let m2 = (i % 10 == 0).then(|| {
            random_sb_in(
                &run.ctx,
                &SpaceDescriptor::additive(4),
                0,
                1,
                1,
                &mut run.rng,
            )
        });
        let Ok(f) = f else { continue };
        run.trial(&f.to_text(), |ctx, c| {
            let twice = fourier(ctx, &fourier(ctx, &f, 0)?, 0)?;
            c.f("fourier twice = reflection", &twice, &reflect(ctx, &f, 0)?);
            Ok(())
        });
        if let Some(Ok(g)) = m2 {
            run.trial(&g.to_text(), |ctx, c| {
                let y = YScale::Const(LocalElem::one());
                let twice = fourier_m2(
                    ctx,
                    &fourier_m2(ctx, &g, [0, 1, 2, 3], &y)?,
                    [0, 1, 2, 3],
                    &y,
                )?;
                let neg = ctx.int(-1);
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
                c.f(
                    "fourier_m2 twice = -1 pullback",
                    &twice,
                    &pullback_linear(ctx, &g, &[0, 1, 2, 3], &sigma)?,
                );
                Ok(())
            });
        }
    }
}

fn with_rat_coeffs(ctx: &Ctx, f: &SBFunction, r: &mut Rng8) -> Result<SBFunction> {
    let terms = f
        .terms()
        .iter()
        .map(|(cell, _)| (cell.clone(), random_rat_coeff(ctx.p(), r)))
        .collect();
    SBFunction::from_region_terms(f.space().clone(), ctx.q(), ctx.p(), terms)
}

/// `∫ f·ǧ = ∫ F̂f·F̂g` for rational-valued `f, g`.
fn parseval(run: &mut Runner, trials: usize) {
    let space = SpaceDescriptor::l_space();
    for _ in 0..trials {
        let fg = random_sb(&run.ctx, &space, run.levels, 3, &mut run.rng)
            .and_then(|f| with_rat_coeffs(&run.ctx, &f, &mut run.rng))
            .and_then(|f| {
                let g = random_sb(&run.ctx, &space, run.levels, 2, &mut run.rng)?;
                Ok((f, with_rat_coeffs(&run.ctx, &g, &mut run.rng)?))
            });
        let Ok((f, g)) = fg else { continue };
        run.trial(&format!("{}{}", f.to_text(), g.to_text()), |ctx, c| {
            let lhs = f.mul(&reflect(ctx, &g, 0)?)?.integral();
            let rhs = fourier(ctx, &f, 0)?.mul(&fourier(ctx, &g, 0)?)?.integral();
            c.s("pairing", &lhs, &rhs);
            Ok(())
        });
    }
}

/// [`small_y`] with `y` restricted to units.
fn unit_y(run: &mut Runner) -> Result<SBFunction> {
    loop {
        let f = small_y(run)?;
        let unit = |r: &Region| match r {
            Region::Shell(v) => *v == 0,
            Region::Ball(b) => b.valuation() == Some(0),
        };
        if f.terms().iter().all(|(cell, _)| unit(&cell[4])) {
            return Ok(f);
        }
    }
}

fn small_y(run: &mut Runner) -> Result<SBFunction> {
    random_sb_in(&run.ctx, &SpaceDescriptor::y_space(), 0, 1, 2, &mut run.rng)
}

fn pointwise(
    c: &mut Cmp,
    what: &str,
    lhs: &SBFunction,
    rhs: &SBFunction,
    pts: &[Vec<LocalElem>],
) -> Result<()> {
    for p in pts {
        c.s(
            &format!(
                "{what} at {}",
                p.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
            &lhs.evaluate(p)?,
            &rhs.evaluate(p)?,
        );
    }
    Ok(())
}

fn action_laws(run: &mut Runner, trials: usize) {
    for i in 0..trials {
        let slot = i % 3;
        let Ok(psi) = (if slot == 1 { unit_y(run) } else { small_y(run) }) else {
            continue;
        };
        let ctx = run.ctx.clone();
        let pts: Vec<Vec<LocalElem>> = (0..20)
            .map(|_| random_point(&ctx, psi.space(), &mut run.rng))
            .collect();
        let len_g = run.rng.gen_range(1..=4);
        let len_h = run.rng.gen_range(1..=4);
        let (wg, wh) = loop {
            let wg = random_word(&ctx, len_g, 0, &mut run.rng);
            let wh = random_word(&ctx, len_h, 0, &mut run.rng);
            if slot != 1 || mid_friendly(&ctx, &wg, &wh) {
                break (wg, wh);
            }
        };
        let (g1, h1) = (
            random_unit_g(&ctx, &mut run.rng),
            random_unit_g(&ctx, &mut run.rng),
        );
        run.trial(
            &format!(
                "{}# words {:?} / {:?}; g = {:?}, h = {:?}\n",
                psi.to_text(),
                wg,
                wh,
                g1,
                h1
            ),
            |ctx, c| {
                let g = word_matrix(ctx, &wg)?;
                let h = word_matrix(ctx, &wh)?;
                let gh = g.mul(ctx, &h);
                let act = |x: &GL2Elem, f: &SBFunction| match slot {
                    0 => act_slot1(ctx, x, f),
                    1 => act_mid(ctx, x, f),
                    _ => act_slot3(ctx, x, f),
                };
                let lhs = act(&g, &act(&h, &psi)?)?;
                let rhs = act(&gh, &psi)?;
                pointwise(c, &format!("slot {} law", slot + 1), &lhs, &rhs, &pts)?;
                let mut by_word = psi.clone();
                for gen in wh.0.iter().rev() {
                    by_word = match slot {
                        1 => act_mid_gen(ctx, gen, &by_word)?,
                        _ => act(&gen.matrix(ctx)?, &by_word)?,
                    };
                }
                pointwise(c, "word action", &by_word, &act(&h, &psi)?, &pts)?;
                let a = act_slot1(ctx, &g1, &act_slot3(ctx, &h1, &psi)?)?;
                let b = act_slot3(ctx, &h1, &act_slot1(ctx, &g1, &psi)?)?;
                pointwise(c, "slot 1/3 commute", &a, &b, &pts)?;
                let a = act_mid_gen(ctx, &Gen::W, &act_slot1(ctx, &g1, &psi)?)?;
                let b = act_slot1(ctx, &g1, &act_mid_gen(ctx, &Gen::W, &psi)?)?;
                pointwise(c, "slot 1/2 commute", &a, &b, &pts)?;
                let a = transpose_13(&act_slot1(ctx, &g1, &psi)?)?;
                let b = act_slot3(ctx, &g1, &transpose_13(&psi)?)?;
                pointwise(c, "transpose conjugates slot 1 to slot 3", &a, &b, &pts)?;
                let a = transpose_13(&act_mid_gen(ctx, &Gen::W, &psi)?)?;
                let b = act_mid_gen(ctx, &Gen::W, &transpose_13(&psi)?)?;
                pointwise(c, "transpose commutes with the middle slot", &a, &b, &pts)?;
                Ok(())
            },
        );
        let f = random_sb_in(&ctx, &SpaceDescriptor::u_g_space(), -1, 2, 2, &mut run.rng)
            .and_then(InducedFn::new);
        let Ok(f) = f else { continue };
        let g = random_g(&ctx, -1, 2, &mut run.rng);
        let h = random_g(&ctx, -1, 2, &mut run.rng);
        let xs: Vec<GL2Elem> = (0..20)
            .map(|_| random_g(&ctx, -1, 2, &mut run.rng))
            .collect();
        run.trial(
            &format!("{}# g = {:?}, h = {:?}\n", f.f.to_text(), g, h),
            |ctx, c| {
                let lhs = f.act(ctx, &g)?.act(ctx, &h)?;
                let rhs = f.act(ctx, &h.mul(ctx, &g))?;
                c.f("induced law", &lhs.f, &rhs.f);
                for x in &xs {
                    c.s(
                        &format!("induced value at {x:?}"),
                        &lhs.scalar_at(ctx, x)?,
                        &f.scalar_at(ctx, &x.mul(ctx, &h).mul(ctx, &g))?,
                    );
                }
                Ok(())
            },
        );
    }
}

/// Middle-slot words kept to shallow refinements: at most one `w` in total, letters
/// applied after it with `b ∈ tO`, and `g`, `h`, `gh` either upper triangular or with
/// `c` a unit and `a ∈ tO`.
fn mid_friendly(ctx: &Ctx, wg: &GenWord, wh: &GenWord) -> bool {
    let (Ok(g), Ok(h)) = (word_matrix(ctx, wg), word_matrix(ctx, wh)) else {
        return false;
    };
    let gh = g.mul(ctx, &h);
    let letters: Vec<&Gen> = wg.0.iter().chain(&wh.0).collect();
    let w_at = letters.iter().position(|x| matches!(x, Gen::W));
    let ws = letters.iter().filter(|x| matches!(x, Gen::W)).count();
    let after_w_small = letters[..w_at.unwrap_or(0)]
        .iter()
        .all(|x| matches!(x, Gen::M(_, b) if b.val_or_prec() >= 1));
    ws <= 1
        && after_w_small
        && [g, h, gh]
            .iter()
            .all(|x| x.c.is_exact_zero() || (x.c.valuation() == Ok(0) && x.a.val_or_prec() >= 1))
}

/// `|a/d|^k` as a scalar.
fn abs_ratio(ctx: &Ctx, a: &LocalElem, d: &LocalElem, k: i32) -> Result<CycScalar> {
    Ok(ctx.qpow(-k * (a.valuation()? - d.valuation()?)))
}

fn mu_equivariance(run: &mut Runner, trials: usize) {
    for _ in 0..trials {
        let ctx = run.ctx.clone();
        let Ok(psi) = random_sb_in(
            &ctx,
            &SpaceDescriptor::y_space(),
            0,
            run.levels,
            3,
            &mut run.rng,
        ) else {
            continue;
        };
        let u = random_elem(ctx.q(), -1, 2, &mut run.rng);
        let x = random_elem(ctx.q(), 0, 2, &mut run.rng);
        let u2 = random_elem(ctx.q(), -1, 2, &mut run.rng);
        let (a, d) = random_torus_pair(&ctx, &mut run.rng);
        let input = format!(
            "{}# u = {u}, x = {x}, u' = {u2}, t = ({a}, {d})\n",
            psi.to_text()
        );
        run.trial(&input, |ctx, c| {
            let base = mu(&psi)?;
            c.f(
                "slot 1 lower unipotent",
                &mu(&act_slot1(ctx, &GL2Elem::lower(ctx, u.clone()), &psi)?)?,
                &base,
            );
            c.f(
                "slot 2 upper unipotent",
                &mu(&act_mid(ctx, &GL2Elem::n(ctx, x.clone()), &psi)?)?,
                &base,
            );
            c.f(
                "slot 3 lower unipotent",
                &mu(&act_slot3(ctx, &GL2Elem::lower(ctx, u2.clone()), &psi)?)?,
                &base,
            );
            let t = GL2Elem::diag(ctx, a.clone(), d.clone())?;
            let target = t_act(ctx, &TModuleTag::l(), (&a, &d), &base)?;
            let twist = abs_ratio(ctx, &a, &d, 1)?;
            c.f(
                "slot 1 torus, twist (1,-1)",
                &mu(&act_slot1(ctx, &t, &psi)?.scale(&twist))?,
                &target,
            );
            c.f(
                "slot 2 torus, twist (0,0)",
                &mu(&act_mid(ctx, &t, &psi)?)?,
                &target,
            );
            c.f(
                "slot 3 torus, twist (1,-1)",
                &mu(&act_slot3(ctx, &t, &psi)?.scale(&twist))?,
                &target,
            );
            Ok(())
        });
    }
}

/// Pipeline stages of the chain `(w,w,w) → μ′ → ℱ`, each paired with its hand-built expectation.
pub fn mu_chain_stages(ctx: &Ctx, m: i32) -> Result<Vec<(&'static str, SBFunction, SBFunction)>> {
    let first = act_www(ctx, &mu_chain_start(ctx, m)?)?;
    let second = mu_prime(&first)?;
    let third = partial_fourier_l(ctx, &second)?;
    Ok(vec![
        ("www", first, mu_chain_checkpoint_one(ctx, m)?),
        ("mu-prime", second, mu_chain_checkpoint_two(ctx, m)?),
        ("fourier", third, mu(&mu_chain_psi0(ctx, m)?)?),
    ])
}

/// Golden file name of a chain stage.
pub fn golden_name(m: i32, stage: &str) -> String {
    format!("mu-chain-eps{m}-{stage}.txt")
}

fn mu_chain(run: &mut Runner, spec: &CheckSpec) -> Result<()> {
    let m = run.levels;
    let stages = match mu_chain_stages(&run.ctx, m) {
        Ok(s) => s,
        Err(e) => {
            run.trial(&format!("eps level {m}\n"), |_, _| Err(e));
            return Ok(());
        }
    };
    for (name, got, want) in stages {
        let golden = spec
            .golden_dir
            .as_ref()
            .map(|dir| std::fs::read_to_string(dir.join(golden_name(m, name))));
        run.trial(&format!("eps level {m}, checkpoint {name}\n"), |ctx, c| {
            c.f(name, &got, &want);
            if name == "fourier" {
                c.f("mu(psi0) = target", &want, &mu_chain_target(ctx, m)?);
            }
            match golden {
                Some(Ok(text)) => c.texts("golden file", got.to_text(), text),
                Some(Err(e)) => return Err(Error::Config(format!("golden file: {e}"))),
                None => {}
            }
            Ok(())
        });
    }
    Ok(())
}

fn unitality(run: &mut Runner, trials: usize) {
    for i in 0..trials {
        let cells = 1 + i % 3;
        let Ok(psi) = random_sb_in(
            &run.ctx,
            &SpaceDescriptor::y_space(),
            -1,
            run.levels,
            cells,
            &mut run.rng,
        ) else {
            continue;
        };
        run.trial(&psi.to_text(), |ctx, c| {
            let clock = unitality_clockwise(ctx, &psi)?;
            let anti = unitality_anticlockwise(ctx, &psi)?;
            c.f("clockwise = eta(anticlockwise)", &clock, &eta(ctx, &anti)?);
            Ok(())
        });
    }
}

fn associativity(run: &mut Runner, trials: usize) {
    for i in 0..trials {
        let cells = 1 + i % 2;
        let psi = loop {
            let y = &SpaceDescriptor::y_space();
            match random_sb_in(&run.ctx, y, 0, run.levels.min(1), cells, &mut run.rng) {
                Ok(p) if y_integral(&p) => break p,
                _ => {}
            }
        };
        run.trial(&psi.to_text(), |ctx, c| {
            let out = mu_doubleprime(ctx, &psi)?;
            c.l2(
                "transpose",
                &mu_doubleprime(ctx, &transpose_13(&psi)?)?,
                &out,
            );
            let moved = act_www(ctx, &psi)?;
            let moved_out = mu_doubleprime(ctx, &moved)?;
            c.l2(
                "transpose after (w,w,w)",
                &mu_doubleprime(ctx, &transpose_13(&moved)?)?,
                &moved_out,
            );
            Ok(())
        });
    }
}

/// Whether every `y`-region of `Ψ` lies in `O`.
fn y_integral(psi: &SBFunction) -> bool {
    psi.terms().iter().all(|(cell, _)| match &cell[4] {
        Region::Shell(v) => *v >= 0,
        Region::Ball(b) => b.min_val() >= 0,
    })
}

fn intertwiner_trace(run: &mut Runner) {
    for n in 1..=run.levels {
        run.trial(&format!("f_{n}\n"), |ctx, c| {
            let f = InducedFn::f_n(ctx, n)?;
            let expected = trace_closed_form(ctx, n)?;
            c.f("trace profile", &trace_profile(ctx, &f)?, &expected);
            c.f(
                "intertwined trace profile",
                &intertwined_trace_profile(ctx, &f)?,
                &expected,
            );
            Ok(())
        });
    }
}

fn intertwiner_unit(run: &mut Runner, trials: usize) {
    for _ in 0..trials {
        let ctx = run.ctx.clone();
        let w = small_whittaker(&ctx, &mut run.rng);
        let gs: Vec<GL2Elem> = (0..5).map(|_| random_g(&ctx, 0, 2, &mut run.rng)).collect();
        let pts: Vec<(LocalElem, LocalElem)> =
            (0..3).map(|_| random_l_point(&ctx, &mut run.rng)).collect();
        run.trial(&format!("{}# g = {gs:?}\n", w.f.to_text()), |ctx, c| {
            let f = unit_map(ctx, &w)?;
            for g in &gs {
                let k = intertwiner_kernel(ctx, &f, g)?;
                let twisted = eta_w(ctx, &f.value_at(ctx, g)?)?;
                for (lam, y) in &pts {
                    let brute = unit_brute_twisted(ctx, &w, g, lam, y)?;
                    let at = format!("g = {g:?}, (λ, y) = ({lam}, {y})");
                    c.s(
                        &format!("eta_w unit value vs oracle, {at}"),
                        &twisted.evaluate(&[lam.clone(), y.clone()])?,
                        &brute,
                    );
                    c.s(
                        &format!("intertwiner kernel vs oracle, {at}"),
                        &k.evaluate(&[lam.clone(), y.clone()])?,
                        &brute,
                    );
                }
            }
            Ok(())
        });
    }
}

fn oracle_integration(run: &mut Runner, trials: usize) {
    let spaces = [
        SpaceDescriptor::additive(1),
        SpaceDescriptor::torus(),
        SpaceDescriptor::l_space(),
    ];
    for i in 0..trials {
        let space = &spaces[i % spaces.len()];
        let Ok(f) = random_sb(&run.ctx, space, run.levels, 1 + i % 5, &mut run.rng) else {
            continue;
        };
        run.trial(&f.to_text(), |_, c| {
            let exact = f.integral();
            let fine = f.max_levels().into_iter().flatten().max().unwrap_or(0);
            c.s(
                "total at the finest level",
                &brute_force_total(&f, fine)?,
                &exact,
            );
            c.s(
                "total one level finer",
                &brute_force_total(&f, fine + 1)?,
                &exact,
            );
            if f.dim() == 2 {
                for coord in 0..2 {
                    c.f(
                        &format!("partial integral over coordinate {coord}"),
                        &brute_force_integral(&f, &[coord], fine + coord as i32)?,
                        &f.integrate(&[coord])?,
                    );
                }
            }
            Ok(())
        });
    }
}
