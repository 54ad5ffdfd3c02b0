//! Acceptance suite: ten criteria, one PASS/FAIL line each. Runs without the
//! libtest harness so the verdict lines are always printed.

use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use leibniz_core::covering::{delta_morphism, gpd_cov_roundtrip_ok, xmod_cov_roundtrip_ok};
use leibniz_core::enumerate::{enumerate_actions, enumerate_leibniz, enumerate_xmods, small_algebras};
use leibniz_core::fixtures::{self, a2, abelian, fixture_groupoids, fixture_xmods};
use leibniz_core::linalg::{vec_add, vec_sub};
use leibniz_core::{
    action_groupoid, check_covering, check_covering_xmod, covering_to_action, delta, derived_action, eta,
    extension_iso, gpd_cov_to_xmod_cov, kernel_of_boundary, oracle, parse, pullback_basis, roundtrip_cov_action,
    roundtrip_delta_eta, roundtrip_eta_delta, semidirect, serialize, validate_algebra, CrossedModule, Document,
    FieldSpec, GroupoidAction, GroupoidMorphism, InternalGroupoid, LeibnizAction, Matrix, Scalar,
    SplitExtension, Structure, XModMorphism,
};

/// Number of Leibniz algebra structures on GF(2)^2, computed once with the
/// brute-force oracle.
const FROZEN_DIM2_GF2: usize = 13;

type Verdict = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn gf(p: u32) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

fn q() -> FieldSpec {
    FieldSpec::Rational
}

fn all_xmods(max_dim: usize, p: u32) -> Vec<CrossedModule> {
    let algs = small_algebras(max_dim, p).unwrap();
    let mut out = Vec::new();
    for l1 in &algs {
        for l0 in &algs {
            out.extend(enumerate_xmods(l1, l0).unwrap());
        }
    }
    out
}

// 1

fn oracle_agreement() -> Verdict {
    let mut checked = 0;
    let mut dim1_passing = 0;
    for n in [1usize, 2] {
        let len = n * n * n;
        for i in 0..oracle::count(2, len).unwrap() {
            let c = oracle::digits(2, len, i);
            let t = oracle::tensor_from_residues(2, [n, n, n], &c);
            let ours = validate_algebra(&t).unwrap().leibniz_ok;
            ensure!(ours == oracle::leibniz_identity_holds(&c, n, 2), "disagreement on {c:?}");
            if n == 1 && ours {
                dim1_passing += 1;
            }
            checked += 1;
        }
    }
    ensure!(checked == 2 + 256, "checked {checked} tensors");
    ensure!(dim1_passing == 1, "{dim1_passing} dim-1 tensors pass");
    Ok(format!("{checked} tensors, dim-1 passing = {dim1_passing}"))
}

// 2 and 3

fn fixture_actions() -> Vec<LeibnizAction> {
    let a = Arc::new(a2(q()));
    let b = Arc::new(abelian(q(), 2));
    vec![
        LeibnizAction::by_bracket(a.clone()),
        LeibnizAction::by_bracket(b.clone()),
        LeibnizAction::trivial(a.clone(), b.clone()).unwrap(),
        LeibnizAction::trivial(b.clone(), a.clone()).unwrap(),
        LeibnizAction::trivial(a.clone(), a).unwrap(),
    ]
}

fn enumerated_actions(p: u32) -> Vec<LeibnizAction> {
    let algs = small_algebras(2, p).unwrap();
    let mut out = Vec::new();
    for actor in &algs {
        for actee in &algs {
            out.extend(enumerate_actions(actor, actee).unwrap());
        }
    }
    out
}

fn derived_action_soundness() -> Verdict {
    let mut counts = Vec::new();
    for (label, acts) in [
        ("fixtures", fixture_actions()),
        ("GF(2)", enumerated_actions(2)),
        ("GF(3)", enumerated_actions(3)),
    ] {
        for act in &acts {
            ensure!(act.validate().all_ok(), "{label}: enumerated action fails its axioms");
            let (_, ext) = semidirect(act).map_err(|e| e.to_string())?;
            ensure!(ext.report().all_ok(), "{label}: semidirect extension invalid");
            let d = derived_action(&ext).map_err(|e| e.to_string())?;
            ensure!(d.validate().all_ok(), "{label}: derived action fails an axiom");
            ensure!(d.left() == act.left() && d.right() == act.right(), "{label}: derived action differs");
        }
        counts.push(format!("{label} {}", acts.len()));
    }
    Ok(format!("actions: {}", counts.join(", ")))
}

fn theta_is_iso(e: &SplitExtension) -> Result<(), String> {
    let (fwd, back) = extension_iso(e).map_err(|x| x.to_string())?;
    let (n, m) = (fwd.target().dim(), fwd.source().dim());
    let f = fwd.matrix().field();
    ensure!(fwd.check_morphism() && back.check_morphism(), "theta not bracket compatible");
    ensure!(fwd.matrix().mul(back.matrix()).unwrap() == Matrix::identity(f, n), "theta theta^-1 != 1");
    ensure!(back.matrix().mul(fwd.matrix()).unwrap() == Matrix::identity(f, m), "theta^-1 theta != 1");
    Ok(())
}

fn theta_isomorphism() -> Verdict {
    let mut exts: Vec<SplitExtension> = fixtures::fixtures_over(q())
        .into_iter()
        .chain(fixtures::fixtures_over(gf(3)))
        .filter_map(|f| match f.payload {
            Structure::Extension(e) => Some(e),
            _ => None,
        })
        .collect();
    let fixture_count = exts.len();
    for act in fixture_actions().iter().chain(&enumerated_actions(2)).chain(&enumerated_actions(3)) {
        exts.push(semidirect(act).map_err(|e| e.to_string())?.1);
    }
    for e in &exts {
        theta_is_iso(e)?;
    }
    Ok(format!("{} extensions ({fixture_count} fixtures)", exts.len()))
}

// 4

fn apply(m: &leibniz_core::LinearMorphism, v: &[Scalar]) -> Vec<Scalar> {
    m.apply(v).unwrap()
}

fn groupoid_laws_hold(g: &InternalGroupoid) -> Result<(), String> {
    ensure!(g.validate().all_ok(), "groupoid fails validation");
    let arr = g.arrows();
    let n = arr.dim();
    let br = |u: &[Scalar], v: &[Scalar]| arr.bracket(u, v).unwrap();
    let (d0, d1, eps) = (g.d0(), g.d1(), g.eps());
    let inv = |u: &[Scalar]| g.inverse(u).unwrap();
    let basis: Vec<_> = (0..n).map(|i| arr.unit(i)).collect();

    // d0, d1, eps and the inverse commute with brackets.
    for a in &basis {
        for b in &basis {
            let ab = br(a, b);
            ensure!(apply(d0, &ab) == g.objects().bracket(&apply(d0, a), &apply(d0, b)).unwrap(), "d0 vs bracket");
            ensure!(apply(d1, &ab) == g.objects().bracket(&apply(d1, a), &apply(d1, b)).unwrap(), "d1 vs bracket");
            ensure!(inv(&ab) == br(&inv(a), &inv(b)), "inverse vs bracket");
        }
    }
    for x in 0..g.objects().dim() {
        for y in 0..g.objects().dim() {
            let (ux, uy) = (g.objects().unit(x), g.objects().unit(y));
            ensure!(apply(eps, &g.objects().bracket(&ux, &uy).unwrap()) == br(&apply(eps, &ux), &apply(eps, &uy)), "eps vs bracket");
        }
    }

    // Inverse composites.
    for a in &basis {
        ensure!(g.compose(&inv(a), a).unwrap() == apply(eps, &apply(d0, a)), "g^-1 g != 1");
        ensure!(g.compose(a, &inv(a)).unwrap() == apply(eps, &apply(d1, a)), "g g^-1 != 1");
    }

    // [ker d0, ker d1] = 0, [g1, eps d1 g] = [g1, g], and ker d0 is an ideal.
    let k0 = d0.kernel();
    let k1 = d1.kernel();
    ensure!(arr.is_ideal(&k0).unwrap(), "ker d0 is not an ideal");
    for u in k0.basis() {
        for v in k1.basis() {
            ensure!(br(u, v).iter().all(Scalar::is_zero) && br(v, u).iter().all(Scalar::is_zero), "[ker d0, ker d1] != 0");
        }
        for a in &basis {
            let e1a = apply(eps, &apply(d1, a));
            ensure!(br(u, &e1a) == br(u, a), "[g1, eps d1 g] != [g1, g]");
            ensure!(br(&e1a, u) == br(a, u), "[eps d1 g, g1] != [g, g1]");
        }
    }

    // Composable pairs (h, k) with d0 h = d1 k.
    let pairs = pullback_basis(d0.matrix(), d1.matrix()).unwrap();
    let split = |v: &[Scalar]| (v[..n].to_vec(), v[n..].to_vec());
    let composite: Vec<_> = pairs
        .basis()
        .iter()
        .map(|v| {
            let (h, k) = split(v);
            let c = g.compose(&h, &k).unwrap();
            (h, k, c)
        })
        .collect();
    for (h, k, c) in &composite {
        let e0h = apply(eps, &apply(d0, h));
        ensure!(*c == vec_add(&vec_sub(h, &e0h), k), "h o k != h - eps d0 h + k");
        ensure!(*c == vec_add(&vec_sub(k, &e0h), h), "h o k != k - eps d0 h + h");
        ensure!(*c == vec_add(&vec_sub(k, &apply(eps, &apply(d1, k))), h), "h o k != k - eps d1 k + h");
        ensure!(apply(d0, c) == apply(d0, k) && apply(d1, c) == apply(d1, h), "composite has wrong ends");
    }
    for (h, k, c) in &composite {
        for (h2, k2, c2) in &composite {
            let sum = g.compose(&vec_add(h, h2), &vec_add(k, k2)).unwrap();
            ensure!(vec_add(c, c2) == sum, "interchange for addition");
            let brk = g.compose(&br(h, h2), &br(k, k2)).unwrap();
            ensure!(br(c, c2) == brk, "interchange for brackets");
        }
    }
    Ok(())
}

fn groupoid_laws() -> Verdict {
    let mut gs = vec![
        InternalGroupoid::pair(Arc::new(a2(q()))).unwrap(),
        InternalGroupoid::one_object(Arc::new(abelian(q(), 2))).unwrap(),
    ];
    for x in all_xmods(2, 2) {
        gs.push(delta(&x).map_err(|e| e.to_string())?);
    }
    for g in &gs {
        groupoid_laws_hold(g)?;
    }
    Ok(format!("{} groupoids", gs.len()))
}

// 5

fn equivalence() -> Verdict {
    let mut xmods: Vec<CrossedModule> = fixture_xmods(q()).into_iter().map(|(_, x)| x).collect();
    let mut gpds: Vec<InternalGroupoid> = fixture_groupoids(q()).into_iter().map(|(_, g)| g).collect();
    for g in gpds.clone() {
        xmods.push(eta(&g).map_err(|e| e.to_string())?);
    }
    let enumerated = all_xmods(2, 2);
    for x in &enumerated {
        gpds.push(delta(x).map_err(|e| e.to_string())?);
    }
    xmods.extend(enumerated);
    for x in &xmods {
        let m = roundtrip_eta_delta(x).map_err(|e| e.to_string())?;
        ensure!(m.source() == x, "eta delta round trip has the wrong source");
        ensure!(m.report().all_ok() && m.f1().is_bijective() && m.f0().is_bijective(), "eta delta not an iso");
    }
    for g in &gpds {
        let m = roundtrip_delta_eta(g).map_err(|e| e.to_string())?;
        ensure!(m.source() == g && m.is_isomorphism(), "delta eta not an iso");
        let back = m.inverse().map_err(|e| e.to_string())?;
        ensure!(back.compose(&m).unwrap() == GroupoidMorphism::identity(g.clone()), "inverse mismatch");
    }
    Ok(format!("{} crossed modules, {} groupoids", xmods.len(), gpds.len()))
}

// 6 and 7

/// `OneObj(Ab(k))` acting on `Ab(m)` by translation `g.l = l + phi(g)`.
fn translation_actions(p: u32) -> Vec<GroupoidAction> {
    let f = gf(p);
    let mut out = Vec::new();
    for k in 0..=2usize {
        for m in 0..=2usize {
            let g = InternalGroupoid::one_object(Arc::new(abelian(f, k))).unwrap();
            let l = Arc::new(abelian(f, m));
            for i in 0..oracle::count(p, m * k).unwrap() {
                let phi = oracle::matrix_from_residues(p, m, k, &oracle::digits(p, m * k, i));
                let act = phi.hstack(&Matrix::identity(f, m)).unwrap();
                out.push(GroupoidAction::new(g.clone(), l.clone(), Matrix::zeros(f, 0, m), act).unwrap());
            }
        }
    }
    out
}

fn constructed_actions() -> Vec<GroupoidAction> {
    let mut out: Vec<GroupoidAction> = fixtures::fixtures_over(q())
        .into_iter()
        .filter_map(|f| match f.payload {
            Structure::GpdAction(a) => Some(a),
            _ => None,
        })
        .collect();
    for (_, g) in fixture_groupoids(q()) {
        out.push(GroupoidAction::canonical(g).unwrap());
    }
    for x in all_xmods(2, 2) {
        out.push(GroupoidAction::canonical(delta(&x).unwrap()).unwrap());
    }
    out.extend(translation_actions(2));
    out
}

/// Identity coverings of the fixture groupoids and projections out of every
/// constructed action groupoid.
fn suite_coverings() -> Result<Vec<GroupoidMorphism>, String> {
    let mut out: Vec<GroupoidMorphism> =
        fixture_groupoids(q()).into_iter().map(|(_, g)| GroupoidMorphism::identity(g)).collect();
    for a in constructed_actions() {
        out.push(action_groupoid(&a).map_err(|e| e.to_string())?.1);
    }
    Ok(out)
}

fn covering_action_equivalence() -> Verdict {
    let actions = constructed_actions();
    let mut canonical = 0;
    for a in &actions {
        ensure!(a.validate().all_ok(), "constructed action fails validation");
        let (ag, q) = action_groupoid(a).map_err(|e| e.to_string())?;
        ensure!(ag.is_valid() && q.is_valid(), "action groupoid or projection invalid");
        let back = covering_to_action(&q).map_err(|e| e.to_string())?;
        ensure!(back.act_matrix() == a.act_matrix() && back.omega() == a.omega(), "action not recovered");
        if a.omega().matrix() == &Matrix::identity(a.omega().matrix().field(), a.groupoid().objects().dim())
            && a.algebra() == a.groupoid().objects()
        {
            // Canonical action: G x| Ob(G) -> G is an isomorphism.
            ensure!(q.is_isomorphism(), "G x| Ob(G) is not isomorphic to G");
            canonical += 1;
        }
    }
    let covs = suite_coverings()?;
    for p in &covs {
        ensure!(check_covering(p), "suite covering rejected");
        let a = covering_to_action(p).map_err(|e| e.to_string())?;
        let r = a.validate();
        ensure!(r.a1 && r.a2 && r.a3 && r.morphism_ok, "induced action fails A1-A3 or interchange");
        let (fwd, back) = roundtrip_cov_action(p).map_err(|e| e.to_string())?;
        ensure!(fwd.is_isomorphism() && back.is_isomorphism(), "G~ -> G x| Ob(G~) not an iso");
        let (_, q) = action_groupoid(&a).map_err(|e| e.to_string())?;
        let over = q.compose(&fwd).map_err(|e| e.to_string())?;
        ensure!(over.on_arrows() == p.on_arrows() && over.on_objects() == p.on_objects(), "iso not over G");
    }
    Ok(format!("{} actions ({canonical} canonical), {} coverings", actions.len(), covs.len()))
}

fn covering_xmods() -> Verdict {
    let covs = suite_coverings()?;
    for p in &covs {
        let m = gpd_cov_to_xmod_cov(p).map_err(|e| e.to_string())?;
        ensure!(check_covering_xmod(m.morphism()), "image of a covering rejected");
        ensure!(gpd_cov_roundtrip_ok(p).map_err(|e| e.to_string())?, "groupoid covering round trip");
        ensure!(xmod_cov_roundtrip_ok(&m).map_err(|e| e.to_string())?, "xmod covering round trip");
        let p2 = leibniz_core::xmod_cov_to_gpd_cov(&m).map_err(|e| e.to_string())?;
        ensure!(check_covering(&p2), "xmod covering maps to a non-covering");
    }
    // Exhaustive over GF(2) morphisms between crossed modules of total
    // dimension at most 3: accepted exactly when the induced groupoid
    // morphism is a covering.
    let small: Vec<_> = all_xmods(2, 2).into_iter().filter(|x| x.l1().dim() + x.l0().dim() <= 3).collect();
    let (mut accepted, mut rejected) = (0usize, 0usize);
    for s in &small {
        for t in &small {
            let (n1, n0, m1, m0) = (s.l1().dim(), s.l0().dim(), t.l1().dim(), t.l0().dim());
            let len = m1 * n1 + m0 * n0;
            if len > 10 {
                continue;
            }
            for i in 0..(1u64 << len) {
                let bits = oracle::digits(2, len, i);
                let f1 = oracle::matrix_from_residues(2, m1, n1, &bits[..m1 * n1]);
                let f0 = oracle::matrix_from_residues(2, m0, n0, &bits[m1 * n1..]);
                let m = XModMorphism::new(s.clone(), t.clone(), f1, f0).unwrap();
                if !m.report().all_ok() {
                    continue;
                }
                let p = delta_morphism(&m).map_err(|e| e.to_string())?;
                let verdict = check_covering_xmod(&m);
                ensure!(verdict == check_covering(&p), "check_covering_xmod disagrees with the groupoid side");
                if verdict {
                    accepted += 1;
                } else {
                    rejected += 1;
                }
            }
        }
    }
    ensure!(accepted > 0 && rejected > 0, "degenerate sample");
    Ok(format!("{} coverings; morphisms accepted {accepted}, rejected {rejected}", covs.len()))
}

// 8

fn kernel_abelian() -> Verdict {
    let mut xs: Vec<CrossedModule> = fixture_xmods(q()).into_iter().chain(fixture_xmods(gf(3))).map(|(_, x)| x).collect();
    for (_, g) in fixture_groupoids(q()) {
        xs.push(eta(&g).map_err(|e| e.to_string())?);
    }
    xs.extend(all_xmods(2, 2));
    let gf3 = small_algebras(2, 3).unwrap();
    for l1 in &gf3 {
        for l0 in gf3.iter().filter(|a| a.dim() + l1.dim() <= 3) {
            xs.extend(enumerate_xmods(l1, l0).unwrap());
        }
    }
    for x in &xs {
        ensure!(x.is_valid(), "unvalidated crossed module in the suite");
        ensure!(kernel_of_boundary(x).1, "ker d is not abelian");
    }
    Ok(format!("{} crossed modules, 100% abelian", xs.len()))
}

// 9

fn regression_count() -> Verdict {
    let ours = enumerate_leibniz(2, 2).map_err(|e| e.to_string())?.len();
    let brute = oracle::brute_force_leibniz(2, 2).len();
    ensure!(brute == FROZEN_DIM2_GF2, "oracle count {brute} != frozen {FROZEN_DIM2_GF2}");
    ensure!(ours == FROZEN_DIM2_GF2, "enumerated {ours} != frozen {FROZEN_DIM2_GF2}");
    Ok(format!("count = {ours}"))
}

// 10

fn cli(args: &[&str]) -> (i32, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_leibniz")).args(args).output().expect("spawn leibniz");
    (o.status.code().unwrap_or(-1), String::from_utf8(o.stdout).expect("utf-8 output"))
}

fn revalidates(dir: &Path, args: &[&str]) -> Result<(), String> {
    let (code, out) = cli(args);
    ensure!(code == 0, "{args:?} exited {code}");
    let (_, again) = cli(args);
    ensure!(again == out, "{args:?} is not deterministic");
    let path = dir.join("out.json");
    fs::write(&path, &out).unwrap();
    let (code, _) = cli(&["validate", path.to_str().unwrap()]);
    ensure!(code == 0, "output of {args:?} fails validate");
    Ok(())
}

fn cli_determinism() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let (mut docs, mut commands) = (0, 0);
    for (field, fs) in [("rational", q()), ("2", gf(2)), ("3", gf(3))] {
        for fx in fixtures::fixtures_over(fs) {
            let text = serialize(&Document::new(fx.payload.clone()));
            ensure!(serialize(&parse(&text).map_err(|e| e.to_string())?) == text, "{} not byte-stable", fx.name);
            let (code, shipped) = cli(&["fixtures", "--name", &fx.name, "--field", field]);
            ensure!(code == 0 && shipped == text, "CLI fixture {} differs", fx.name);
            docs += 1;
            let path = dir.path().join("in.json");
            fs::write(&path, &text).unwrap();
            let input = path.to_str().unwrap().to_owned();
            let runs: Vec<Vec<&str>> = match fx.payload {
                Structure::Action(_) => vec![vec!["build", "semidirect"]],
                Structure::GpdAction(_) => {
                    vec![vec!["build", "action-groupoid"], vec!["build", "action-groupoid", "--projection"]]
                }
                Structure::XMod(_) => vec![vec!["convert", "delta"]],
                Structure::Groupoid(_) => vec![vec!["convert", "eta"]],
                _ => vec![],
            };
            for mut args in runs {
                args.push(&input);
                revalidates(dir.path(), &args)?;
                commands += 1;
            }
        }
    }
    Ok(format!("{docs} fixture documents, {commands} build/convert runs"))
}

fn main() -> ExitCode {
    let criteria: [(&str, Option<u64>, fn() -> Verdict); 10] = [
        ("oracle agreement", Some(1), oracle_agreement),
        ("derived-action soundness", Some(30), derived_action_soundness),
        ("theta isomorphism", None, theta_isomorphism),
        ("groupoid laws", Some(30), groupoid_laws),
        ("xmod/groupoid equivalence", Some(60), equivalence),
        ("covering/action equivalence", Some(30), covering_action_equivalence),
        ("covering crossed modules", Some(30), covering_xmods),
        ("ker boundary abelian", None, kernel_abelian),
        ("regression count", Some(5), regression_count),
        ("CLI determinism", None, cli_determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let took = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(secs)) if took > Duration::from_secs(secs) => {
                Err(format!("took {:.2}s, limit {secs}s", took.as_secs_f64()))
            }
            (o, _) => o,
        };
        let limit = limit.map(|s| format!(" (limit {s}s)")).unwrap_or_default();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{:.2}s{limit}]", i + 1, took.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{:.2}s{limit}]", i + 1, took.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all 10 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 10 criteria fail");
        ExitCode::FAILURE
    }
}
