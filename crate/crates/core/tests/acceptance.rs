//! Acceptance suite: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use novsig::engine::{
    cd_drop_report, check_cohomology_vanishing, check_homology_vanishing, cover_sphere,
    one_relator_h2_rule, sigma_membership, sigma_report, sigma_star_membership, ConeCertificate,
};
use novsig::laurent::{
    laurent_presentation, random_complex, ranicki_verify, to_chain_complex, LaurentComplex,
};
use novsig::{
    abelianize, parse_presentation, ChainComplex, Character, EngineOptions, Field, Session, Verdict,
};

const SEED: u64 = 2024;
const CORPUS: usize = 200;
const OPENNESS_SAMPLES: usize = 50;

struct Line {
    ok: bool,
    detail: String,
    time: Duration,
}

/// A certified verdict kept for re-verification and openness.
struct Certified {
    label: String,
    complex: ChainComplex,
    chi: Character,
    abelianization: novsig::AbelianizationData,
    cert: ConeCertificate,
}

#[derive(Default)]
struct Ledger {
    certified: Vec<Certified>,
}

impl Ledger {
    fn keep(&mut self, label: &str, s: &Session, chi: &Character, v: &Verdict) {
        self.keep_raw(label, &s.complex, &s.abelianization, chi, v);
    }

    fn keep_raw(
        &mut self,
        label: &str,
        c: &ChainComplex,
        ab: &novsig::AbelianizationData,
        chi: &Character,
        v: &Verdict,
    ) {
        if let Some(cert) = v.certificate() {
            self.certified.push(Certified {
                label: label.to_string(),
                complex: c.clone(),
                chi: chi.clone(),
                abelianization: ab.clone(),
                cert: cert.clone(),
            });
        }
    }
}

fn session(text: &str) -> Session {
    Session::new(
        parse_presentation(text).unwrap(),
        Field::Rationals,
        (200, 40),
        EngineOptions::default(),
    )
    .unwrap()
}

fn ints(s: &Session, v: &[i64]) -> Character {
    Character::from_integers(&s.abelianization, v).unwrap()
}

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn timed(f: impl FnOnce() -> (bool, String)) -> Line {
    let start = Instant::now();
    let (ok, detail) = f();
    Line {
        ok,
        detail,
        time: start.elapsed(),
    }
}

fn corpus() -> Vec<LaurentComplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..CORPUS)
        .map(|_| random_complex(&mut rng, Field::Rationals))
        .collect()
}

fn oracle_consistency(corpus: &[LaurentComplex]) -> (bool, String) {
    let start = Instant::now();
    let agree = corpus.iter().filter(|c| ranicki_verify(c).agree).count();
    let secs = start.elapsed().as_secs_f64();
    (
        agree == corpus.len() && secs < 60.0,
        format!("{agree}/{} agree in {secs:.1} s", corpus.len()),
    )
}

fn engine_vs_oracle(corpus: &[LaurentComplex], ledger: &mut Ledger) -> (bool, String) {
    let ab = abelianize(&laurent_presentation());
    let opts = EngineOptions::default();
    let (mut unsound, mut acyclic, mut certified, mut inconclusive) = (0, 0, 0, 0);
    for (k, lc) in corpus.iter().enumerate() {
        let oracle_vanishes = ranicki_verify(lc).novikov_acyclic;
        let c = to_chain_complex(lc).unwrap();
        for sign in [1, -1] {
            let chi = Character::from_integers(&ab, &[sign]).unwrap();
            let v = check_homology_vanishing(&c, &chi, (0, c.top()), &opts).unwrap();
            if oracle_vanishes {
                acyclic += 1;
            }
            match &v {
                Verdict::Vanishes(_) if !oracle_vanishes => unsound += 1,
                Verdict::Vanishes(_) => certified += 1,
                Verdict::NonVanishingCertified(_) if oracle_vanishes => unsound += 1,
                Verdict::Inconclusive { .. } => inconclusive += 1,
                _ => {}
            }
            ledger.keep_raw(&format!("complex {k} sign {sign}"), &c, &ab, &chi, &v);
        }
    }
    let rate = 100.0 * certified as f64 / acyclic.max(1) as f64;
    (
        unsound == 0 && rate >= 90.0,
        format!(
            "unsound {unsound}; certified {certified}/{acyclic} oracle-vanishing ({rate:.1}%); {inconclusive} inconclusive"
        ),
    )
}

fn certificate_validity(ledger: &Ledger) -> (bool, String) {
    let bad: Vec<String> = ledger
        .certified
        .iter()
        .filter_map(|r| {
            r.cert
                .verify(&r.complex, &r.chi)
                .err()
                .map(|e| format!("{}: {e}", r.label))
        })
        .collect();
    (
        bad.is_empty(),
        format!(
            "{}/{} certificates re-verified{}",
            ledger.certified.len() - bad.len(),
            ledger.certified.len(),
            bad.first()
                .map(|b| format!("; first failure {b}"))
                .unwrap_or_default()
        ),
    )
}

/// A random rational character near `chi` inside `cone`.
fn sample_in_cone(rng: &mut ChaCha8Rng, r: &Certified) -> Option<Character> {
    let base = r.chi.primitive_coords();
    for _ in 0..200 {
        let scale = rng.gen_range(8..=40i64);
        let den = rng.gen_range(1..=9i64);
        let v: Vec<BigRational> = base
            .iter()
            .map(|&x| rational(scale * x + rng.gen_range(-3..=3), den))
            .collect();
        if r.cert.cone.contains_coords(&v) {
            return Character::from_vector(&r.abelianization, &v)
                .ok()
                .filter(|c| !c.is_zero());
        }
    }
    None
}

fn openness(ledger: &Ledger) -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let opts = EngineOptions::default();
    let (mut total, mut kept) = (0usize, 0usize);
    let mut failures = vec![];
    for r in &ledger.certified {
        for _ in 0..OPENNESS_SAMPLES {
            let Some(psi) = sample_in_cone(&mut rng, r) else {
                failures.push(format!("{}: no sample found", r.label));
                break;
            };
            total += 1;
            let (lo, hi) = r.cert.degree_range;
            let v = if r.cert.cohomology {
                check_cohomology_vanishing(&r.complex, &psi, (lo, hi), &opts)
            } else {
                check_homology_vanishing(&r.complex, &psi, (lo, hi), &opts)
            };
            let stored_ok = r.cert.verify(&r.complex, &psi).is_ok();
            match v {
                Ok(v) if v.vanishes() && stored_ok => kept += 1,
                _ => failures.push(format!("{} at {:?}", r.label, psi.coords_display())),
            }
        }
    }
    (
        failures.is_empty() && total > 0,
        format!(
            "{kept}/{total} sampled characters re-certified across {} verdicts{}",
            ledger.certified.len(),
            failures
                .first()
                .map(|f| format!("; first failure {f}"))
                .unwrap_or_default()
        ),
    )
}

fn klein(ledger: &mut Ledger) -> (bool, String) {
    let s = session("group Klein\ngens a t\nrel t a t^-1 a");
    let chi = ints(&s, &[1]);
    let (r, v) = cd_drop_report(&s, &chi, 2).unwrap();
    ledger.keep("Klein +", &s, &chi, &v[0]);
    ledger.keep("Klein -", &s, &chi.negate(), &v[1]);
    let ok =
        v[0].vanishes() && v[1].vanishes() && r.conclusion.starts_with("cd(ker) = 1; kernel free");
    (ok, r.conclusion)
}

fn bs12(ledger: &mut Ledger) -> (bool, String) {
    let s = session("group BS(1,2)\ngens a t\nrel t a t^-1 a^-2");
    let (_, v) = sigma_report(&s, &ints(&s, &[1])).unwrap();
    let exactly_one = v[0].vanishes() != v[1].vanishes();
    let bad_sign = if v[0].vanishes() { -1 } else { 1 };
    let good_sign = -bad_sign;
    ledger.keep(
        "BS(1,2)",
        &s,
        &ints(&s, &[good_sign]),
        &v[usize::from(good_sign < 0)],
    );
    // the other sign stays uncertified at every scale and every cap
    let mut never = true;
    for cap in [4, 16, 64, 128] {
        for (n, d) in [(1, 1), (2, 1), (3, 2), (7, 5)] {
            let chi = s.character(&[rational(bad_sign * n, d)]).unwrap();
            if sigma_membership(&s.complex, &chi, &EngineOptions::with_cap(cap))
                .unwrap()
                .vanishes()
            {
                never = false;
            }
        }
    }
    (
        exactly_one && never,
        format!(
            "+chi {}, -chi {}; {} sign never certified over 16 runs",
            v[0].label(),
            v[1].label(),
            if bad_sign > 0 { "+" } else { "-" }
        ),
    )
}

fn bs23(ledger: &mut Ledger) -> (bool, String) {
    let s = session("group BS(2,3)\ngens a t\nrel t a^2 t^-1 a^-3");
    let mut h2 = true;
    let mut co = vec![];
    for sign in [1, -1] {
        let chi = ints(&s, &[sign]);
        let rule = one_relator_h2_rule(&s.presentation, &chi).unwrap();
        let engine = check_homology_vanishing(&s.complex, &chi, (2, 2), &s.options).unwrap();
        h2 &= rule.vanishes() && engine.vanishes();
        ledger.keep(&format!("BS(2,3) H2 {sign}"), &s, &chi, &engine);
        co.push(sigma_star_membership(&s.complex, &chi, 2, 1, &s.options).unwrap());
    }
    let both = co.iter().all(Verdict::vanishes);
    (
        h2 && !both,
        format!(
            "H2 vanishes for both signs: {h2}; H^2 verdicts: +{} -{}",
            co[0].label(),
            co[1].label()
        ),
    )
}

fn free_group() -> (bool, String) {
    let s = session("group F2\ngens x y");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut vanished = 0;
    let n = 24;
    for _ in 0..n {
        let v = loop {
            let v = [
                rational(rng.gen_range(-9..=9), rng.gen_range(1..=5)),
                rational(rng.gen_range(-9..=9), rng.gen_range(1..=5)),
            ];
            if v.iter().any(|x| *x != rational(0, 1)) {
                break v;
            }
        };
        let chi = s.character(&v).unwrap();
        if sigma_membership(&s.complex, &chi, &s.options)
            .unwrap()
            .vanishes()
        {
            vanished += 1;
        }
    }
    (
        vanished == 0,
        format!("{vanished}/{n} sampled characters certified"),
    )
}

fn z2_cover(ledger: &mut Ledger) -> (bool, String) {
    let start = Instant::now();
    let s = session("group Z^2\ngens x y\nrel x y x^-1 y^-1");
    let r = cover_sphere(&s, &[vec![1, 0], vec![0, 1]], 2, 16).unwrap();
    let secs = start.elapsed().as_secs_f64();
    for q in r.samples.iter() {
        let chi = ints(&s, q);
        let v = sigma_star_membership(&s.complex, &chi, 2, 2, &s.options).unwrap();
        ledger.keep(&format!("Z^2 {q:?}"), &s, &chi, &v);
    }
    (
        r.covered && r.cones.len() <= 8 && r.conclusion.ends_with("cd(N) <= 0") && secs < 10.0,
        format!("{} in {secs:.2} s", r.conclusion),
    )
}

const ONE_RELATOR: [&str; 12] = [
    "group BS(1,2)\ngens a t\nrel t a t^-1 a^-2",
    "group BS(2,3)\ngens a t\nrel t a^2 t^-1 a^-3",
    "group BS(1,3)\ngens a t\nrel t a t^-1 a^-3",
    "group BS(1,-2)\ngens a t\nrel t a t^-1 a^2",
    "group BS(3,2)\ngens a t\nrel t a^3 t^-1 a^-2",
    "group Klein\ngens a t\nrel t a t^-1 a",
    "group Klein'\ngens a b\nrel a^2 b^2",
    "group Z^2\ngens x y\nrel x y x^-1 y^-1",
    "group trefoil\ngens x y\nrel x^2 y^-3",
    "group Surface(2)\ngens a b c d\nrel a b a^-1 b^-1 c d c^-1 d^-1",
    "group NonOrientable(3)\ngens a b c\nrel a^2 b^2 c^2",
    "group Z^2*Z\ngens x y z\nrel x y x^-1 y^-1",
];

fn one_relator_corpus(ledger: &mut Ledger) -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut claims = 0;
    let mut checked = 0;
    let mut groups = 0;
    for text in ONE_RELATOR {
        let s = session(text);
        assert!(s.presentation.is_torsion_free_one_relator());
        let b = s.abelianization.free_rank;
        if b == 0 {
            continue;
        }
        groups += 1;
        for k in 0..10 {
            let v: Vec<BigRational> = loop {
                let v: Vec<BigRational> = (0..b)
                    .map(|_| rational(rng.gen_range(-5..=5), rng.gen_range(1..=3)))
                    .collect();
                if v.iter().any(|x| *x != rational(0, 1)) {
                    break v;
                }
            };
            let chi = s.character(&v).unwrap();
            let rule = one_relator_h2_rule(&s.presentation, &chi).unwrap();
            let engine = check_homology_vanishing(&s.complex, &chi, (2, 2), &s.options).unwrap();
            for verdict in [&rule, &engine] {
                checked += 1;
                // stricter than asked: anything short of Vanishes counts
                claims += usize::from(!verdict.vanishes());
            }
            if k == 0 {
                ledger.keep(&format!("{} H2", s.presentation.name), &s, &chi, &engine);
            }
        }
    }
    (
        claims == 0 && groups >= 10,
        format!("{groups} presentations, {checked} H2 verdicts, {claims} not vanishing"),
    )
}

fn determinism() -> (bool, String) {
    let run = || {
        let s = session("group Z^2\ngens x y\nrel x y x^-1 y^-1");
        let (r, _) =
            sigma_report(&s, &s.character(&[rational(1, 2), rational(3, 1)]).unwrap()).unwrap();
        let k = session("group Klein\ngens a t\nrel t a t^-1 a");
        let (d, _) = cd_drop_report(&k, &ints(&k, &[1]), 2).unwrap();
        let c = cover_sphere(&s, &[vec![1, 0], vec![0, 1]], 2, 16).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let lc = random_complex(&mut rng, Field::Rationals);
        format!(
            "{}{}{}{}",
            r.to_json(),
            d.to_json(),
            c.to_json(),
            novsig::laurent::complex_to_json(&lc)
        )
    };
    let (a, b) = (run(), run());
    (
        a == b,
        format!("{} bytes per run, identical: {}", a.len(), a == b),
    )
}

fn main() -> ExitCode {
    let mut ledger = Ledger::default();
    let corpus = corpus();
    let mut lines: Vec<(usize, &str, Line)> = vec![];
    lines.push((
        1,
        "oracle self-consistency",
        timed(|| oracle_consistency(&corpus)),
    ));
    lines.push((
        2,
        "engine soundness and completeness",
        timed(|| engine_vs_oracle(&corpus, &mut ledger)),
    ));
    let l5 = timed(|| klein(&mut ledger));
    let l6 = timed(|| bs12(&mut ledger));
    let l7 = timed(|| bs23(&mut ledger));
    let l8 = timed(free_group);
    let l9 = timed(|| z2_cover(&mut ledger));
    let l10 = timed(|| one_relator_corpus(&mut ledger));
    lines.push((
        3,
        "certificate validity",
        timed(|| certificate_validity(&ledger)),
    ));
    lines.push((4, "openness", timed(|| openness(&ledger))));
    lines.push((5, "Klein bottle cd drop", l5));
    lines.push((6, "BS(1,2) one sign", l6));
    lines.push((7, "BS(2,3) top degree", l7));
    lines.push((8, "free group", l8));
    lines.push((9, "Z^2 sphere cover", l9));
    lines.push((10, "one-relator H2", l10));
    lines.push((11, "determinism", timed(determinism)));
    lines.sort_by_key(|l| l.0);
    let mut failed = 0;
    for (n, name, l) in &lines {
        let tag = if l.ok { "PASS" } else { "FAIL" };
        failed += usize::from(!l.ok);
        println!(
            "[{tag}] {n:>2} {name}: {} ({:.2} s)",
            l.detail,
            l.time.as_secs_f64()
        );
    }
    println!(
        "acceptance: {}/{} criteria pass",
        lines.len() - failed,
        lines.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
