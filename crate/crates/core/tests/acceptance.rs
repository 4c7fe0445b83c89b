//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Reference values are transcribed from the published tables. A criterion
//! whose only mismatches are listed in its `known` set prints FAIL with the
//! reason and does not fail the run; any other mismatch exits nonzero.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use rpm_core::asm::asm_identity_suite;
use rpm_core::dynamics::TransitionTable;
use rpm_core::hexagon::{f_closed, hexagon_around, hexagon_holds, Poly, PolyTable};
use rpm_core::orbits::orbits_tile_family;
use rpm_core::stationary::detailed_stats;
use rpm_core::{
    closed_form_s_a, drop_tile, eligible_contacts, enumerate_family, intensity_matrix, mirror,
    orbit_closure, orbit_sum, Family, HeightPath, Limits, Model, Side, StateCache,
    StationaryOptions, Verifier,
};

/// Monte Carlo tolerance on the total variation distance.
const TV_TOLERANCE: f64 = 0.01;
/// Wall-clock budget for one Monte Carlo run.
const MC_BUDGET: Duration = Duration::from_secs(60);
const MC_STEPS: u64 = 10_000_000;
const MC_SEED: u64 = 20_240_601;
/// Prime for the independent rank check of the generator.
const RANK_PRIME: u64 = 1_000_000_007;

const LATTICE_TABLE: &[(i64, i64, &str)] = &[
    (-9, -6, "0"),
    (-8, -6, "0"),
    (-7, -6, "0"),
    (-6, -6, "0"),
    (-5, -6, "0"),
    (-4, -6, "429/32"),
    (-3, -6, "143/32"),
    (-2, -6, "-22/32"),
    (-1, -6, "1/8"),
    (0, -6, "1/16"),
    (1, -6, "14/32"),
    (-9, -5, "252586/16"),
    (-8, -5, "26194/16"),
    (-7, -5, "0"),
    (-6, -5, "0"),
    (-5, -5, "0"),
    (-4, -5, "0"),
    (-3, -5, "66/16"),
    (-2, -5, "18/16"),
    (-1, -5, "-1/8"),
    (0, -5, "-1/8"),
    (1, -5, "12/16"),
    (2, -5, "-84/16"),
    (-9, -4, "22610/8"),
    (-8, -4, "8398/8"),
    (-7, -4, "2431/8"),
    (-6, -4, "429/8"),
    (-5, -4, "0"),
    (-4, -4, "0"),
    (-3, -4, "21/8"),
    (-2, -4, "7/8"),
    (-1, -4, "-1/4"),
    (0, -4, "1/4"),
    (1, -4, "-5/8"),
    (2, -4, "49/8"),
    (3, -4, "588/8"),
    (-9, -3, "646/4"),
    (-8, -3, "425/4"),
    (-7, -3, "260/4"),
    (-6, -3, "143/4"),
    (-5, -3, "66/4"),
    (-4, -3, "21/4"),
    (-3, -3, "0"),
    (-2, -3, "-5/4"),
    (-1, -3, "-1/2"),
    (0, -3, "1/4"),
    (1, -3, "-4/4"),
    (2, -3, "-25/4"),
    (3, -3, "-70/4"),
    (4, -3, "-147/4"),
    (-9, -2, "17/2"),
    (-8, -2, "15/2"),
    (-7, -2, "13/2"),
    (-6, -2, "11/2"),
    (-5, -2, "9/2"),
    (-4, -2, "7/2"),
    (-3, -2, "5/2"),
    (-2, -2, "3/2"),
    (-1, -2, "1/2"),
    (0, -2, "-1/2"),
    (1, -2, "-3/2"),
    (2, -2, "-5/2"),
    (3, -2, "-7/2"),
    (4, -2, "-9/2"),
    (5, -2, "-11/2"),
    (-8, -1, "1"),
    (-7, -1, "1"),
    (-6, -1, "1"),
    (-5, -1, "1"),
    (-4, -1, "1"),
    (-3, -1, "1"),
    (-2, -1, "1"),
    (-1, -1, "1"),
    (0, -1, "1"),
    (1, -1, "1"),
    (2, -1, "1"),
    (3, -1, "1"),
    (4, -1, "1"),
    (5, -1, "1"),
    (-8, 0, "1"),
    (-7, 0, "1"),
    (-6, 0, "1"),
    (-5, 0, "1"),
    (-4, 0, "1"),
    (-3, 0, "1"),
    (-2, 0, "1"),
    (-1, 0, "1"),
    (0, 0, "1"),
    (1, 0, "1"),
    (2, 0, "1"),
    (3, 0, "1"),
    (4, 0, "1"),
    (5, 0, "1"),
    (6, 0, "1"),
    (-7, 1, "-8"),
    (-6, 1, "-7"),
    (-5, 1, "-6"),
    (-4, 1, "-5"),
    (-3, 1, "-4"),
    (-2, 1, "-3"),
    (-1, 1, "-2"),
    (0, 1, "-1"),
    (1, 1, "0"),
    (2, 1, "1"),
    (3, 1, "2"),
    (4, 1, "3"),
    (5, 1, "4"),
    (6, 1, "5"),
    (-7, 2, "-195"),
    (-6, 2, "-132"),
    (-5, 2, "-84"),
    (-4, 2, "-49"),
    (-3, 2, "-25"),
    (-2, 2, "-10"),
    (-1, 2, "-2"),
    (0, 2, "1"),
    (1, 2, "1"),
    (2, 2, "0"),
    (3, 2, "0"),
    (4, 2, "3"),
    (5, 2, "11"),
    (6, 2, "26"),
    (7, 2, "50"),
    (-6, 3, "4356"),
    (-5, 3, "1764"),
    (-4, 3, "588"),
    (-3, 3, "140"),
    (-2, 3, "14"),
    (-1, 3, "-2"),
    (0, 3, "2"),
    (1, 3, "2"),
    (2, 3, "0"),
    (3, 3, "0"),
    (4, 3, "0"),
    (5, 3, "0"),
    (6, 3, "26"),
    (7, 3, "170"),
    (-5, 4, "39204"),
    (-4, 4, "5544"),
    (-3, 4, "294"),
    (-2, 4, "-18"),
    (-1, 4, "4"),
    (0, 4, "-2"),
    (1, 4, "3"),
    (2, 4, "3"),
    (3, 4, "0"),
    (4, 4, "0"),
    (5, 4, "0"),
    (6, 4, "0"),
    (7, 4, "0"),
    (-4, 5, "-18018"),
    (-3, 5, "528"),
    (-2, 5, "-44"),
    (-1, 5, "4"),
    (0, 5, "2"),
    (1, 5, "-8"),
    (2, 5, "-11"),
    (3, 5, "0"),
    (4, 5, "0"),
    (5, 5, "0"),
    (6, 5, "0"),
    (7, 5, "0"),
    (-3, 6, "-1716"),
    (-2, 6, "52"),
    (-1, 6, "4"),
    (0, 6, "4"),
    (1, 6, "-10"),
    (2, 6, "26"),
    (3, 6, "26"),
    (4, 6, "0"),
    (5, 6, "0"),
    (6, 6, "0"),
    (7, 6, "0"),
    (-2, 7, "-60"),
    (-1, 7, "-8"),
    (0, 7, "-4"),
    (1, 7, "-12"),
    (2, 7, "100"),
    (3, 7, "170"),
    (4, 7, "0"),
    (5, 7, "0"),
    (6, 7, "0"),
    (7, 7, "0"),
];

/// Totals of the three models for L = 1, 2, ...
const TOTALS_A: [&str; 11] = [
    "1", "1", "2", "3", "11", "26", "170", "646", "7429", "45885", "920460",
];
const TOTALS_B: [&str; 9] = [
    "1",
    "2",
    "6",
    "33",
    "286",
    "4420",
    "109820",
    "4799134",
    "340879665",
];
const TOTALS_C: [&str; 10] = [
    "2",
    "6",
    "66",
    "858",
    "48620",
    "1427660",
    "47991340",
    "11589908610",
    "13642004193300",
    "1139086232487000",
];
const MIN_C: [&str; 10] = ["1", "1", "2", "3", "11", "13", "10", "34", "323", "133"];

/// Model A level sums by L, from the lowest level upwards.
const LEVEL_SUMS_A: [&[&str]; 13] = [
    &["1"],
    &["1", "1"],
    &["2", "1"],
    &["3", "3", "1"],
    &["11", "4", "1"],
    &["26", "26", "5", "1"],
    &["170", "50", "6", "1"],
    &["646", "646", "85", "7", "1"],
    &["7429", "1862", "133", "8", "1"],
    &["45885", "45885", "4508", "196", "9", "1"],
    &["920460", "202860", "9660", "276", "10", "1"],
    &["9304650", "9304650", "720360", "18900", "375", "11", "1"],
    &[
        "323801820",
        "64080720",
        "2184570",
        "34452",
        "495",
        "12",
        "1",
    ],
];

/// Printed polynomial solutions `(family, m, n, text)`.
const POLYNOMIALS: &[(char, i64, i64, &str)] = &[
    ('F', 4, 2, "2xy+y^2"),
    ('F', 5, 2, "3x^2+6xy+2y^2"),
    ('F', 6, 2, "11x^2+12xy+3y^2"),
    ('F', 7, 2, "50x^2+30xy+5y^2"),
    ('F', 8, 2, "85x^2+42xy+6y^2"),
    ('F', 9, 2, "133x^2+56xy+7y^2"),
    ('F', 6, 3, "11x^2y+12xy^2+3y^3"),
    ('F', 7, 3, "26x^3+78x^2y+55xy^2+11y^3"),
    ('F', 8, 3, "170x^3+294x^2y+156xy^2+26y^3"),
    ('F', 9, 3, "646x^3+816x^2y+350xy^2+50y^3"),
    ('F', 8, 4, "170x^3y+294x^2y^2+156xy^3+26y^4"),
    ('F', 9, 4, "646x^4+2584x^3y+2839x^2y^2+1190xy^3+170y^4"),
    ('G', 2, 2, "2+5x+3x^2"),
    ('G', 2, 3, "3+11x+11x^2"),
    ('G', 2, 4, "4+19x+26x^2"),
    ('G', 2, 5, "5+29x+50x^2"),
    ('G', 2, 6, "6+41x+85x^2"),
    ('G', 3, 2, "3+7x+4x^2"),
    ('G', 3, 3, "11+44x+59x^2+26x^3"),
    ('G', 3, 4, "26+137x+255x^2+170x^3"),
    ('G', 3, 5, "50+321x+747x^2+646x^3"),
    ('G', 4, 2, "-4x-9x^2-5x^3"),
    ('G', 4, 3, "26+97x+121x^2+50x^3"),
    ('G', 4, 4, "170+935x+1956x^2+1837x^3+646x^4"),
    ('G', 5, 2, "5x+16x^2+17x^3+6x^4"),
    ('G', 5, 3, "-50x-179x^2-214x^3-85x^4"),
    ('G', 6, 2, "-6x-19x^2-20x^3-7x^4"),
];

/// Pictured orbits: family, generator, level, side, printed sum.
const PICTURED_ORBITS: &[(Family, &[i32], i32, Side, i64)] = &[
    (Family::Ballot, &[0, 1, 0, 1, 0, 1, 0], 0, Side::Left, 1870),
    (Family::Ballot, &[2, 3, 2, 3, 2, 1, 0], 2, Side::Left, 200),
    (Family::Ballot, &[4, 5, 4, 3, 2, 1, 0], 4, Side::Left, 6),
    (
        Family::AnchoredCross,
        &[1, 0, 1, 0, 1, 0],
        0,
        Side::Right,
        13260,
    ),
    (
        Family::AnchoredCross,
        &[3, 2, 1, 2, 1, 2],
        1,
        Side::Right,
        7436,
    ),
];

struct Outcome {
    /// Mismatch descriptions; empty when the criterion holds.
    failures: Vec<String>,
    /// Failures expected from a documented misprint or an unattainable
    /// statement, keyed by the same description prefix.
    known: Vec<(String, &'static str)>,
    detail: String,
}

impl Outcome {
    fn new(detail: impl Into<String>) -> Self {
        Outcome {
            failures: Vec::new(),
            known: Vec::new(),
            detail: detail.into(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn expect(&mut self, prefix: impl Into<String>, reason: &'static str) {
        self.known.push((prefix.into(), reason));
    }

    fn is_known(&self, f: &str) -> Option<&'static str> {
        self.known
            .iter()
            .find(|(p, _)| f.starts_with(p.as_str()))
            .map(|k| k.1)
    }

    /// True when every failure is an expected one.
    fn report(&self, id: usize, name: &str, elapsed: Duration) -> bool {
        let secs = elapsed.as_secs_f64();
        if self.failures.is_empty() {
            println!("PASS  {id:>2} {name}: {} [{secs:.1}s]", self.detail);
            return true;
        }
        let unexpected: Vec<&String> = self
            .failures
            .iter()
            .filter(|f| self.is_known(f).is_none())
            .collect();
        let reasons: BTreeSet<&str> = self
            .failures
            .iter()
            .filter_map(|f| self.is_known(f))
            .collect();
        let shown: Vec<&str> = self.failures.iter().take(6).map(String::as_str).collect();
        let tag = if unexpected.is_empty() {
            "known"
        } else {
            "UNEXPECTED"
        };
        println!(
            "FAIL  {id:>2} {name}: {} mismatch(es), {tag}: {}{} [{secs:.1}s]",
            self.failures.len(),
            shown.join("; "),
            if self.failures.len() > shown.len() {
                "; ..."
            } else {
                ""
            },
        );
        for r in reasons {
            println!("        reason: {r}");
        }
        unexpected.is_empty()
    }
}

fn big(s: &str) -> BigInt {
    s.parse().expect("integer literal")
}

fn ratio(s: &str) -> BigRational {
    match s.split_once('/') {
        Some((p, q)) => BigRational::new(big(p), big(q)),
        None => BigRational::from_integer(big(s)),
    }
}

fn show(q: &Option<BigRational>) -> String {
    q.as_ref().map_or("undefined".into(), |v| v.to_string())
}

fn totals(v: &Verifier) -> Outcome {
    let mut out = Outcome::new("model totals and model C minima");
    let tables: [(Model, &[&str]); 3] = [
        (Model::A, &TOTALS_A),
        (Model::B, &TOTALS_B),
        (Model::C, &TOTALS_C),
    ];
    for (model, want) in tables {
        for (i, w) in want.iter().enumerate() {
            let st = v.cache.get(model, i + 1).unwrap();
            let s = st.total();
            out.check(s == big(w), || format!("S_{model}({})={s} want {w}", i + 1));
            if model == Model::C {
                let m = st.summary().m;
                out.check(m == big(MIN_C[i]), || {
                    format!("m_C({})={m} want {}", i + 1, MIN_C[i])
                });
            }
        }
    }
    out
}

fn level_sums(v: &Verifier) -> Outcome {
    let mut out = Outcome::new("model A level sums L<=13 from the kernel and the closed form");
    for (i, row) in LEVEL_SUMS_A.iter().enumerate() {
        let l = i + 1;
        let lo = if l % 2 == 0 { -1 } else { 0 };
        let stats = detailed_stats(&v.cache.get(Model::A, l).unwrap());
        for (j, w) in row.iter().enumerate() {
            let n = lo + j as i32;
            let kernel = stats.s_ln.get(&n).cloned();
            out.check(kernel.as_ref() == Some(&big(w)), || {
                format!("kernel S({l},{n})={kernel:?} want {w}")
            });
            let closed = closed_form_s_a(l as i64, n as i64).ok();
            out.check(closed == Some(big(w)), || {
                format!("closed S({l},{n})={closed:?} want {w}")
            });
        }
        out.check(stats.s_ln.len() == row.len(), || {
            format!("L={l}: {} levels want {}", stats.s_ln.len(), row.len())
        });
    }
    out
}

fn hexagon(v: &Verifier) -> Outcome {
    let mut out = Outcome::new("");
    let rep = v.hexagon_on_states(13).unwrap();
    for i in rep.failures() {
        out.failures.push(format!(
            "states L={} {}: {} vs {}",
            i.l, i.label, i.lhs, i.rhs
        ));
    }
    let mut centers = 0;
    for m in -8..=12 {
        for n in -8..=12 {
            if let Some(h) = hexagon_around(m, n, f_closed) {
                centers += 1;
                out.check(hexagon_holds(&h), || format!("closed form at ({m},{n})"));
            }
        }
    }
    out.detail = format!(
        "{} relations on level sums L<=13, {centers} centres of the closed form",
        rep.instances.len()
    );
    out
}

fn lattice_values() -> Outcome {
    let mut out = Outcome::new(format!("{} printed lattice cells", LATTICE_TABLE.len()));
    out.expect("f(-8,-5)", "printed 26194/16 where the lattice gives 25194/16; the neighbouring hexagon fixes the value");
    for &(m, n, s) in LATTICE_TABLE {
        let got = f_closed(m, n);
        out.check(got == Some(ratio(s)), || {
            format!("f({m},{n})={} printed {s}", show(&got))
        });
    }
    // The printed cell disagrees with the relation through its own neighbours.
    let around = hexagon_around(-7, -4, |m, n| {
        LATTICE_TABLE
            .iter()
            .find(|c| (c.0, c.1) == (m, n))
            .map(|c| ratio(c.2))
    });
    out.check(around.is_none_or(|h| !hexagon_holds(&h)), || {
        "printed cell (-8,-5) satisfies its hexagon".into()
    });
    out
}

fn polynomials() -> Outcome {
    let mut out = Outcome::new(format!("{} printed polynomials", POLYNOMIALS.len()));
    out.expect(
        "F(7,2)",
        "rows printed as F(7,2), F(8,2), F(9,2) are F(8,2), F(9,2), F(10,2)",
    );
    out.expect(
        "F(8,2)",
        "rows printed as F(7,2), F(8,2), F(9,2) are F(8,2), F(9,2), F(10,2)",
    );
    out.expect(
        "F(9,2)",
        "rows printed as F(7,2), F(8,2), F(9,2) are F(8,2), F(9,2), F(10,2)",
    );
    let mut t = PolyTable::new();
    for &(family, m, n, text) in POLYNOMIALS {
        let want: Poly = text.parse().unwrap();
        let get =
            |t: &mut PolyTable, m, n| if family == 'F' { t.f(m, n) } else { t.g(m, n) }.unwrap();
        let got = get(&mut t, m, n);
        if got != want {
            let shifted = get(&mut t, m + 1, n) == want;
            out.failures.push(format!(
                "{family}({m},{n})={got} printed {want}{}",
                if shifted {
                    format!(" (= {family}({},{n}))", m + 1)
                } else {
                    String::new()
                }
            ));
        }
    }
    out
}

fn asm(v: &Verifier) -> Outcome {
    let rep = asm_identity_suite(6, 9).unwrap();
    let c1 = v.conjecture(1, Limits::uniform(9)).unwrap();
    let mut out = Outcome::new(format!(
        "{} symmetric-ASM identities n<=6, {} totals L<=9",
        rep.checks.len(),
        c1.instances.len()
    ));
    for c in rep.checks.iter().filter(|c| !c.pass) {
        out.failures
            .push(format!("{} n={}: {} vs {}", c.identity, c.n, c.lhs, c.rhs));
    }
    for i in c1.failures() {
        out.failures
            .push(format!("C1 {} L={}: {} vs {}", i.label, i.l, i.lhs, i.rhs));
    }
    out
}

fn conjectures(v: &Verifier) -> Outcome {
    let mut out = Outcome::new("");
    out.expect(
        "C3 mult(M_a) L=",
        "for odd L the largest model A weight occurs (L+1)/2 times, not the stated (L-1)/2; \
         the pictured family k=1,3,...,L has (L+1)/2 members",
    );
    let wide = Limits { a: 12, b: 10, c: 9 };
    let orbit = Limits { a: 12, b: 9, c: 8 };
    let mut count = 0;
    for (ids, lim) in [
        (&[3u32, 5, 6, 9, 10, 11, 13][..], wide),
        (&[7, 8, 12][..], orbit),
    ] {
        for &id in ids {
            let rep = v.conjecture(id, lim).unwrap();
            count += rep.instances.len();
            for i in rep.failures() {
                out.failures.push(format!(
                    "C{id} {} L={}: {} vs {}",
                    i.label, i.l, i.lhs, i.rhs
                ));
            }
        }
    }
    for &(family, h, n, side, want) in PICTURED_ORBITS {
        let g = HeightPath::new(family, h.to_vec()).unwrap();
        let model = if family == Family::Ballot {
            Model::B
        } else {
            Model::C
        };
        let o = orbit_closure(&g, n, side).unwrap();
        let sum = orbit_sum(&v.cache.get(model, g.l()).unwrap(), &o).unwrap();
        out.check(sum == BigInt::from(want), || {
            format!("orbit {h:?}: {sum} want {want}")
        });
        if let Some(p) = v.predicted_orbit_sum(&o).unwrap() {
            out.check(p == sum, || {
                format!("orbit {h:?}: predicted {p}, computed {sum}")
            });
        }
    }
    out.detail = format!(
        "{count} instances, {} pictured orbits",
        PICTURED_ORBITS.len()
    );
    out
}

fn right_weights(v: &Verifier) -> Outcome {
    let rep = v.eq_x(&[6, 8]).unwrap();
    let mut out = Outcome::new(format!("{} model C weights at L=6,8", rep.instances.len()));
    for i in rep.failures() {
        out.failures
            .push(format!("{} L={}: {} vs {}", i.label, i.l, i.lhs, i.rhs));
    }
    out.check(!rep.instances.is_empty(), || "no instances".into());
    out
}

/// Rank of a dense integer matrix modulo `p`.
fn rank_mod(mut a: Vec<Vec<i64>>, p: u64) -> usize {
    let p = p as i128;
    let norm = |x: i64| (x as i128).rem_euclid(p);
    let pow = |mut b: i128, mut e: i128| {
        let mut r = 1i128;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let (rows, cols) = (a.len(), a.first().map_or(0, Vec::len));
    let mut m: Vec<Vec<i128>> = a
        .drain(..)
        .map(|r| r.into_iter().map(norm).collect())
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = pow(m[rank][c], p - 2);
        for r in rank + 1..rows {
            if m[r][c] != 0 {
                let f = m[r][c] * inv % p;
                for k in c..cols {
                    m[r][k] = (m[r][k] - f * m[rank][k]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn structure(v: &Verifier) -> Outcome {
    let mut out = Outcome::new("");
    let (mut drops, mut orbits, mut ranks) = (0usize, 0usize, 0usize);
    for model in Model::ALL {
        for l in 1..=10 {
            let family = model.family();
            for p in enumerate_family(family, l).unwrap() {
                for i in model.positions(l) {
                    drops += 1;
                    let q = drop_tile(&p, i, model).unwrap().0;
                    out.check(q.satisfies(family), || {
                        format!("closure {model} L={l} {:?} at {i}", p.heights())
                    });
                }
            }
            let h = intensity_matrix(model, l).unwrap();
            out.check(h.column_sums_vanish(), || {
                format!("column sums {model} L={l}")
            });
            let st = v.cache.get(model, l).unwrap();
            out.check(st.is_annihilated().unwrap(), || {
                format!("kernel {model} L={l}")
            });
            out.check(st.weights.iter().all(|w| w > &BigInt::zero()), || {
                format!("positivity {model} L={l}")
            });
            if h.dimension() <= 700 {
                ranks += 1;
                let r = rank_mod(h.to_dense(), RANK_PRIME);
                out.check(r + 1 == h.dimension(), || {
                    format!("rank {model} L={l}: {r} of {}", h.dimension())
                });
            }
        }
    }
    for (family, side) in [
        (Family::Ballot, Side::Left),
        (Family::AnchoredCross, Side::Right),
    ] {
        for l in 1..=10 {
            for n in 0..=1 {
                out.check(orbits_tile_family(family, l, n, side).unwrap(), || {
                    format!("partition {family:?} L={l} N={n}")
                });
            }
            for p in enumerate_family(family, l).unwrap() {
                for n in 0..=2 {
                    orbits += 1;
                    let k = eligible_contacts(&p, n, side).len();
                    let size = orbit_closure(&p, n, side).unwrap().len();
                    out.check(size == 1 << k, || {
                        format!("orbit size {:?} N={n}: {size} vs 2^{k}", p.heights())
                    });
                }
            }
        }
    }
    for l in 1..=12 {
        let st = v.cache.get(Model::A, l).unwrap();
        for (p, w) in st.iter() {
            let q = mirror(p, Model::A).unwrap();
            out.check(st.weight(q.heights()) == Some(w), || {
                format!("mirror {:?}", p.heights())
            });
        }
    }
    out.detail = format!("{drops} drops, {orbits} orbits, {ranks} exact ranks, mirror L<=12");
    out
}

fn monte_carlo(v: &Verifier) -> Outcome {
    let mut out = Outcome::new("");
    let mut parts = Vec::new();
    for model in [Model::A, Model::B] {
        let l = 6;
        let start = Instant::now();
        let table = TransitionTable::new(model, l, model.default_cap()).unwrap();
        let exact = rpm_core::simulate::exact_distribution(&v.cache.get(model, l).unwrap());
        let r =
            rpm_core::simulate::simulate_against(&table, &exact, MC_STEPS, MC_SEED, None).unwrap();
        let t = start.elapsed();
        out.check(r.tv < TV_TOLERANCE, || {
            format!("{model} L={l}: TV {:.2e}", r.tv)
        });
        out.check(t < MC_BUDGET, || {
            format!("{model} L={l}: {:.1}s", t.as_secs_f64())
        });
        parts.push(format!(
            "{model}: TV {:.1e} in {:.1}s",
            r.tv,
            t.as_secs_f64()
        ));
    }
    out.detail = format!("{MC_STEPS} steps, {}", parts.join(", "));
    out
}

fn main() -> ExitCode {
    let v = Verifier::new(StateCache::new(StationaryOptions::default()));
    let criteria: [(&str, &dyn Fn() -> Outcome); 10] = [
        ("model totals", &|| totals(&v)),
        ("level sums", &|| level_sums(&v)),
        ("hexagon relation", &|| hexagon(&v)),
        ("lattice table", &lattice_values),
        ("polynomial solutions", &polynomials),
        ("ASM identities", &|| asm(&v)),
        ("weight conjectures and orbit sums", &|| conjectures(&v)),
        ("right-boundary weights", &|| right_weights(&v)),
        ("structural properties", &|| structure(&v)),
        ("Monte Carlo", &|| monte_carlo(&v)),
    ];
    let mut ok = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        ok &= outcome.report(i + 1, name, start.elapsed());
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
