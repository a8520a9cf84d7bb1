//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach stdout.
//! Exits nonzero if any criterion fails other than in the single known way
//! recorded in `KNOWN`.

use cogalois::classify::{mnk_invariant_audit, negation_z4_triple, triples_isomorphic};
use cogalois::cocycle::Triple;
use cogalois::report::Report;
use cogalois::rings::{build_local_ring, principal_unit_triples, quadratic_family, EisensteinData};
use cogalois::selfaction::{adequate_units_criterion, deformation_classes};
use cogalois::verify::{
    ab2_suite, adequate_units_suite, character_suite, connexion_sweep, d8q_check, mncg_expected, mncg_suite,
    module_sweep, pronil_sweep, quad_suite, selfact_suite,
};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

/// Criteria allowed to fail, with a predicate the observed outcome must satisfy.
const KNOWN: &[usize] = &[7];

struct Line {
    id: usize,
    title: &'static str,
    pass: bool,
    detail: String,
    expected_failure_confirmed: bool,
}

fn summary(r: &Report) -> String {
    let mut s = format!("{} checks, {} violations", r.checked, r.violations.len());
    for v in r.violations.iter().take(3) {
        s += &format!("; {v}");
    }
    s
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn pow_mod(mut b: usize, mut e: usize, n: usize) -> usize {
    let mut r = 1 % n;
    b %= n;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % n;
        }
        b = b * b % n;
        e >>= 1;
    }
    r
}

/// u is adequate on Z/n iff x•y = x + u^{−x}y is associative.
fn adequate_oracle(n: usize) -> Vec<usize> {
    (1..n)
        .filter(|&u| pow_mod(u, n, n) == 1)
        .filter(|&u| {
            let inv = pow_mod(u, n - 1, n);
            let w: Vec<usize> = (0..n).map(|x| pow_mod(inv, x, n)).collect();
            let op = |x: usize, y: usize| (x + w[x] * y) % n;
            (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| op(op(a, b), c) == op(a, op(b, c)))))
        })
        .collect()
}

fn det3(m: &[[i64; 3]; 3], p: i64) -> i64 {
    let d = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    d.rem_euclid(p)
}

fn main() -> ExitCode {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).max(2);
    let mut lines: Vec<Line> = Vec::new();
    let mut push = |id, title, pass, detail: String| {
        lines.push(Line { id, title, pass, detail, expected_failure_confirmed: false });
    };
    let t0 = Instant::now();

    let sweep = connexion_sweep(8, workers).expect("connexion sweep");
    push(1, "connexion laws", sweep.laws.passed(), format!("{} triples; {}", sweep.triples, summary(&sweep.laws)));
    push(2, "Kneser/coGalois criteria", sweep.criteria.passed(), summary(&sweep.criteria));
    push(3, "surjectivity witnesses, index identity", sweep.surjectivity.passed(), summary(&sweep.surjectivity));

    let (n, pr) = pronil_sweep(8, workers).expect("pronilpotent sweep");
    push(4, "pronilpotent criterion", pr.passed(), format!("{n} triples; {}", summary(&pr)));

    let mut au = adequate_units_suite(500).expect("adequate units");
    for n in 2..=64 {
        let (o, c) = (adequate_oracle(n), adequate_units_criterion(n));
        au.check(o == c, || format!("n={n}: associativity oracle {o:?} vs criterion {c:?}"));
    }
    au.check(adequate_oracle(4) == [1, 3] && adequate_oracle(8) == [1, 3, 5, 7], || "oracle U_4/U_8".into());
    push(5, "adequate units", au.passed(), summary(&au));

    let mut sa = selfact_suite().expect("self-action suite");
    for (n, want) in [(4, vec!["V4", "Z4"]), (8, vec!["D8", "Q8", "Z8"])] {
        let mut got: Vec<String> = deformation_classes(&Arc::new(cogalois::group::cyclic(n)))
            .expect("deformation classes")
            .into_iter()
            .map(|c| c.name.unwrap_or_default())
            .collect();
        got.sort();
        sa.check(got == want, || format!("Z/{n}: {got:?}"));
    }
    push(6, "self-action deformations", sa.passed(), summary(&sa));

    let d = d8q_check().expect("D8/Q pair");
    let pass7 = d.bijective && d.inverse_is_cocycle && d.forward_mncg && d.backward_mncg;
    lines.push(Line {
        id: 7,
        title: "D8/Q deformation pair mncG",
        pass: pass7,
        detail: format!("{d:?}"),
        expected_failure_confirmed: d.bijective
            && d.inverse_is_cocycle
            && d.forward_mncg
            && !d.backward_mncg
            && d.backward_cogalois,
    });
    let mut push = |id, title, pass, detail: String| {
        lines.push(Line { id, title, pass, detail, expected_failure_confirmed: false });
    };

    let (mncg_run, mut mr) = mncg_suite(workers).expect("mncG enumeration");
    let mut want: Vec<(usize, usize)> =
        mncg_expected().expect("families").iter().map(|t| (t.gamma().order(), t.g().order())).collect();
    want.sort_unstable();
    mr.check(mncg_run.shapes() == want, || format!("shapes {:?} vs {want:?}", mncg_run.shapes()));
    push(8, "mncG classification", mr.passed(), format!("{} classes {:?}; {}", mncg_run.classes.len(), mncg_run.shapes(), summary(&mr)));

    let (char_run, mut cr) = character_suite(workers).expect("mnK enumeration");
    let mut shapes = vec![(2, 4)];
    for p in (3..=16).filter(|&p| is_prime(p)) {
        shapes.extend((2..=16).filter(|r| (p - 1) % r == 0).map(|r| (r, p)));
    }
    shapes.sort_unstable();
    cr.check(char_run.shapes() == shapes, || format!("shapes {:?} vs {shapes:?}", char_run.shapes()));
    push(9, "mnK character classification", cr.passed(), format!("{} classes; {}", char_run.classes.len(), summary(&cr)));

    let (ring_mnk, mut rr) = ab2_suite().expect("ring suite");
    let mnk_of = |d: EisensteinData| principal_unit_triples(&build_local_ring(&d).expect("ring")).expect("triples");
    for p in [3, 5] {
        let u = mnk_of(EisensteinData::truncated_polynomial(p, 2));
        let units = p * p - p;
        rr.check(u.mnk_count() == units && u.mnk_classes() == 1, || format!("F_{p}[x]/(x²): {} mnK", u.mnk_count()));
    }
    rr.check(mnk_of(EisensteinData::truncated_polynomial(3, 3)).mnk_count() == 0, || "F_3[x]/(x³) has mnK triples".into());
    let z4 = mnk_of(EisensteinData::new(2, 2, 1, 1, vec![1]).expect("Z/4"));
    let z4_ok = z4.mnk_count() == 2
        && z4.mnk_triples().all(|t| triples_isomorphic(t, &negation_z4_triple()).unwrap_or(false));
    rr.check(z4_ok, || "Z/4 does not reproduce the negation triple".into());
    push(10, "principal-unit triples", rr.passed(), summary(&rr));

    let (q, mut qr) = quad_suite(7, 200).expect("quadratic family");
    for code in 0..27 {
        let (a, b, c) = (code % 3, code / 3 % 3, code / 9);
        let lam = vec![vec![a, b], vec![b, c]];
        let det = (a * c + 9 - b * b % 3) % 3;
        let v = quadratic_family(3, 2, &[0, 0], &lam).expect("s=2 triple");
        qr.check(v.mnk == (det != 0), || format!("Λ={lam:?}: mnK {} but det {det}", v.mnk));
    }
    for m in [[[1, 0, 0], [0, 1, 0], [0, 0, 2]], [[1, 1, 0], [1, 1, 0], [0, 0, 2]], [[0, 1, 2], [1, 2, 0], [2, 0, 1]]] {
        let lam: Vec<Vec<usize>> = m.iter().map(|r| r.iter().map(|&x| x as usize).collect()).collect();
        let v = quadratic_family(3, 3, &[0, 0, 0], &lam).expect("s=3 triple");
        qr.check(v.mnk == (det3(&m, 3) != 0), || format!("Λ={lam:?}: mnK {}", v.mnk));
    }
    qr.check(q.s2_classes == 2 && q.s3_classes == 1, || format!("classes s=2: {}, s=3: {}", q.s2_classes, q.s3_classes));
    push(
        11,
        "quadratic family",
        qr.passed(),
        format!("s=2 {} inputs / {} classes, s=3 {} inputs / {} classes; {}", q.s2_inputs, q.s2_classes, q.s3_inputs, q.s3_classes, summary(&qr)),
    );

    let ms = module_sweep(8, 9, workers).expect("module sweep");
    let mut mods = ms.pairing.clone();
    mods.merge(ms.composition.clone());
    mods.merge(ms.equivariance.clone());
    mods.merge(ms.augmentation.clone());
    push(
        12,
        "abelian-module suite",
        mods.passed(),
        format!("{} modules ({} elementary); {}", ms.modules, ms.augmentation_modules, summary(&mods)),
    );

    let all: Vec<&Triple> = char_run.triples().chain(ring_mnk.iter()).chain(q.mnk.iter()).collect();
    let audit = mnk_invariant_audit(all.iter().copied()).expect("audit");
    push(13, "mnK invariant audit", audit.passed(), format!("{} triples; {}", all.len(), summary(&audit)));

    let mut unexpected = 0;
    for l in &lines {
        println!("{} {:>2} {}: {}", if l.pass { "PASS" } else { "FAIL" }, l.id, l.title, l.detail);
        if !l.pass {
            if KNOWN.contains(&l.id) && l.expected_failure_confirmed {
                println!("        known failure: outcome matches the recorded analysis");
            } else {
                unexpected += 1;
            }
        }
    }
    let passed = lines.iter().filter(|l| l.pass).count();
    println!("{passed}/{} criteria passed in {:.1?}", lines.len(), t0.elapsed());
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
