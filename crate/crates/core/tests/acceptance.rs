//! Acceptance criteria. Each criterion prints one PASS/FAIL line with its
//! elapsed time; the test fails if any criterion fails or exceeds its budget.

use std::collections::{HashSet, VecDeque};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use mannheim::codec::DecodeStatus;
use mannheim::metric::{Axiom, Outcome, Violation, EXHAUSTIVE_AUDIT_LIMIT};
use mannheim::{Code, EisensteinInt, Label, ResidueField, WeightKind, WeightTable, Word, UNITS};

const TEST_PRIMES: [usize; 6] = [7, 13, 19, 31, 37, 43];

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e(x: i64, y: i64) -> EisensteinInt {
    EisensteinInt::new(x, y)
}

fn field(p: usize) -> ResidueField {
    ResidueField::build(p).expect("supported prime")
}

fn code(p: usize) -> Code {
    Code::build(Arc::new(field(p)), 0).expect("t = 0 is valid")
}

struct Criterion {
    id: &'static str,
    title: &'static str,
    budget: Duration,
}

/// Times the duration `body` returns, or the whole call when it returns `None`.
fn run(c: &Criterion, body: impl FnOnce() -> Result<Option<Duration>, String>) -> bool {
    let start = Instant::now();
    let result = body();
    let total = start.elapsed();
    let (ok, detail, elapsed) = match result {
        Ok(timed) => {
            let elapsed = timed.unwrap_or(total);
            if elapsed <= c.budget {
                (true, String::new(), elapsed)
            } else {
                (false, format!(" over budget {:?}", c.budget), elapsed)
            }
        }
        Err(msg) => (false, format!(" {msg}"), total),
    };
    println!(
        "{} {} {} ({:.3} ms){}",
        if ok { "PASS" } else { "FAIL" },
        c.id,
        c.title,
        elapsed.as_secs_f64() * 1e3,
        detail
    );
    ok
}

fn ac01_p7_golden_table() -> Result<Option<Duration>, String> {
    let start = Instant::now();
    let f = field(7);
    let elapsed = start.elapsed();
    ensure(f.pi() == e(1, 2), || format!("pi = {}", f.pi()))?;
    ensure(f.r() == 3, || format!("r = {}", f.r()))?;
    // 0, 1, -wb, w, -w, wb, -1
    let expected = [
        EisensteinInt::ZERO,
        EisensteinInt::ONE,
        -EisensteinInt::W_BAR,
        EisensteinInt::W,
        -EisensteinInt::W,
        EisensteinInt::W_BAR,
        -EisensteinInt::ONE,
    ];
    ensure(f.representatives() == expected, || {
        format!("table {:?}", f.representatives())
    })?;
    Ok(Some(elapsed))
}

fn ac02_p193_golden_labels() -> Result<Option<Duration>, String> {
    let f = field(193);
    for (label, rep) in [(9, e(-7, 7)), (94, e(2, -8)), (108, e(0, -1))] {
        let got = f.representative(label).map_err(|e| e.to_string())?;
        ensure(got == rep, || {
            format!("rep[{label}] = {got}, expected {rep}")
        })?;
    }
    Ok(None)
}

fn ac03_counterexample() -> Result<Option<Duration>, String> {
    let f = field(193);
    let t = WeightTable::new(&f);
    let (x, y, z) = (
        f.label_of(e(-6, 7)),
        f.label_of(e(1, 0)),
        f.label_of(e(1, -1)),
    );
    ensure((x, y, z) == (10, 1, 109), || format!("labels {x} {y} {z}"))?;
    let d = |a, b| t.distance(WeightKind::Original, a, b).unwrap();
    let (xy, xz, zy) = (d(x, y), d(x, z), d(z, y));
    ensure((xy, xz, zy) == (14, 10, 1), || {
        format!("distances {xy} {xz} {zy}")
    })?;
    ensure(xy > xz + zy, || "no strict violation".into())?;
    let known = Violation {
        axiom: Axiom::Triangle,
        labels: vec![x, y, z],
        distances: vec![xy, xz, zy],
    };
    ensure(known.replay(&t, WeightKind::Original), || {
        "known certificate does not replay".into()
    })?;

    let report = t.audit_sampled(WeightKind::Original, 100_000, 1);
    ensure(report.axioms.triangle == Outcome::Fail, || {
        "sampled audit missed the failure".into()
    })?;
    let cert = report.first_violation.ok_or("no certificate")?;
    ensure(cert.axiom == Axiom::Triangle, || format!("{cert:?}"))?;
    ensure(cert.replay(&t, WeightKind::Original), || {
        "certificate does not replay".into()
    })?;
    Ok(None)
}

fn ac04_graph_metric_axioms() -> Result<Option<Duration>, String> {
    for p in TEST_PRIMES {
        let t = WeightTable::new(&field(p));
        let r = t
            .audit_exhaustive(WeightKind::Graph, EXHAUSTIVE_AUDIT_LIMIT)
            .map_err(|e| e.to_string())?;
        ensure(
            r.violation_count == 0 && r.first_violation.is_none(),
            || format!("p = {p}: {:?}", r.first_violation),
        )?;
        ensure(
            [r.axioms.identity, r.axioms.symmetry, r.axioms.triangle] == [Outcome::Pass; 3],
            || format!("p = {p}: {:?}", r.axioms),
        )?;
    }
    Ok(None)
}

fn ac05_weight_ordering() -> Result<Option<Duration>, String> {
    for p in TEST_PRIMES {
        let f = field(p);
        let t = WeightTable::new(&f);
        for l in 0..p {
            let g = t.weight(WeightKind::Graph, l).unwrap();
            let m = t.weight(WeightKind::Corrected, l).unwrap();
            let big = t.weight(WeightKind::Original, l).unwrap();
            ensure(g <= m && m <= big, || {
                format!("p = {p}, label {l}: {g} {m} {big}")
            })?;
        }
        let mut units: Vec<Label> = f.unit_labels().to_vec();
        units.sort_unstable();
        ensure(t.weight_one_labels(WeightKind::Graph) == units, || {
            format!("p = {p}: graph weight-1 set")
        })?;
        ensure(t.weight_one_labels(WeightKind::Corrected) == units, || {
            format!("p = {p}: w_m weight-1 set")
        })?;
    }
    Ok(None)
}

fn ac06_non_isomorphism() -> Result<Option<Duration>, String> {
    let start = Instant::now();
    let f = field(7);
    let t = WeightTable::new(&f);
    let elapsed = start.elapsed();
    let one = f.label_of(EisensteinInt::ONE);
    for kind in WeightKind::ALL {
        ensure(t.weight(kind, one).unwrap() == 1, || {
            format!("{kind}(1) != 1")
        })?;
    }
    // w^2 = -wb, so +-w^2 are the classes of -wb and wb.
    for a in [
        EisensteinInt::W * EisensteinInt::W,
        -(EisensteinInt::W * EisensteinInt::W),
    ] {
        let l = f.label_of(a);
        let big = t.weight(WeightKind::Original, l).unwrap();
        let m = t.weight(WeightKind::Corrected, l).unwrap();
        let g = t.weight(WeightKind::Graph, l).unwrap();
        ensure((big, m, g) == (2, 1, 1), || format!("{a}: {big} {m} {g}"))?;
    }
    Ok(Some(elapsed))
}

fn ac07_packing_identity(codes: &[Code]) -> Result<Option<Duration>, String> {
    let start = Instant::now();
    let reports: Vec<_> = codes.iter().map(|c| c.packing_report()).collect();
    let elapsed = start.elapsed();
    for r in reports {
        let r = r.map_err(|e| e.to_string())?;
        ensure(r.packing_identity_holds, || format!("p = {}", r.p))?;
        ensure(r.ball_size == 6 * r.n as u64 + 1, || {
            format!("ball size at p = {}", r.p)
        })?;
    }
    Ok(Some(elapsed))
}

fn ac08_exhaustive_partition() -> Result<Option<Duration>, String> {
    for (p, words) in [(13, 169u64), (19, 6859)] {
        let r = code(p).verify_perfect(true).map_err(|e| e.to_string())?;
        ensure(r.space_size == words.into(), || {
            format!("p = {p}: space {}", r.space_size)
        })?;
        ensure(r.exhaustive_partition_verified, || {
            format!("p = {p}: balls do not partition")
        })?;
    }
    Ok(None)
}

fn ac09_decoder_totality() -> Result<Option<Duration>, String> {
    for (p, expected_cases) in [(13, 156), (19, 6498)] {
        let c = code(p);
        let f = c.field();
        let mut cases = 0;
        for cw in c.codewords().map_err(|e| e.to_string())? {
            let clean = c.decode_single(&cw).map_err(|e| e.to_string())?;
            ensure(
                clean.status == DecodeStatus::Clean && clean.codeword == cw,
                || format!("{cw} not clean"),
            )?;
            for i in 0..c.n() {
                for unit in UNITS {
                    let u = f.label_of(unit);
                    let mut y = cw.clone().into_inner();
                    y[i] = f.add(y[i], u).unwrap();
                    let d = c.decode_single(&y).map_err(|e| e.to_string())?;
                    ensure(
                        d.codeword == cw
                            && d.status == DecodeStatus::Corrected
                            && d.error_position == Some(i)
                            && d.error_value == Some(u),
                        || format!("p = {p}: {cw} + {unit} x^{i} decoded to {:?}", d),
                    )?;
                    cases += 1;
                }
            }
        }
        ensure(cases == expected_cases, || {
            format!("p = {p}: {cases} cases")
        })?;
    }
    Ok(None)
}

fn ac10_wcyclic_closure() -> Result<Option<Duration>, String> {
    for p in [13, 19] {
        let c = code(p);
        let words: HashSet<Word> = c
            .codewords()
            .map_err(|e| e.to_string())?
            .into_iter()
            .collect();
        let shifted: HashSet<Word> = words.iter().map(|w| c.wshift(w).unwrap()).collect();
        ensure(shifted == words, || {
            format!("p = {p}: shift does not preserve the code")
        })?;
        let (_, rem) = c
            .modulus_divided_by_generator()
            .map_err(|e| e.to_string())?;
        ensure(rem.iter().all(|&r| r == 0), || {
            format!("p = {p}: remainder {rem:?}")
        })?;
    }
    Ok(None)
}

fn ac11_oracle_equivalences() -> Result<Option<Duration>, String> {
    // Product-graph BFS on A_7[w]^2, edges add a unit to one coordinate.
    let p = 7;
    let f = field(p);
    let t = WeightTable::new(&f);
    let units: Vec<Label> = UNITS.iter().map(|u| f.label_of(*u)).collect();
    let vertices = p * p;
    for src in 0..vertices {
        let mut dist = vec![u64::MAX; vertices];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            let (a, b) = (v % p, v / p);
            for &u in &units {
                for next in [(a + u) % p + b * p, a + (b + u) % p * p] {
                    if dist[next] == u64::MAX {
                        dist[next] = dist[v] + 1;
                        queue.push_back(next);
                    }
                }
            }
        }
        for (dst, &expected) in dist.iter().enumerate() {
            let (u, v) = ([src % p, src / p], [dst % p, dst / p]);
            let summed = t.word_distance(WeightKind::Graph, &u, &v).unwrap();
            ensure(summed == expected, || {
                format!("{u:?} -> {v:?}: {summed} vs {expected}")
            })?;
        }
    }

    // Minimal-norm representatives against a wide brute-force lattice scan.
    for p in TEST_PRIMES {
        let f = field(p);
        let bound = p as i64;
        let mut best: Vec<Option<(u64, EisensteinInt)>> = vec![None; p];
        for x in -bound..=bound {
            for y in -bound..=bound {
                let a = e(x, y);
                let l = (x + f.r() as i64 * y).rem_euclid(p as i64) as usize;
                let key = (a.norm(), a);
                if best[l].is_none_or(|b| key < b) {
                    best[l] = Some(key);
                }
            }
        }
        for (l, b) in best.iter().enumerate() {
            let (norm, rep) = b.unwrap();
            let got = f.representative(l).unwrap();
            ensure(got == rep && got.norm() == norm, || {
                format!("p = {p}, label {l}: {got} vs {rep}")
            })?;
        }
    }
    Ok(None)
}

fn ac12_cli_determinism() -> Result<Option<Duration>, String> {
    let args = [
        "simulate",
        "--p",
        "37",
        "--trials",
        "10000",
        "--seed",
        "42",
        "--epsilon",
        "0.05",
    ];
    let run_once = || {
        Command::new(env!("CARGO_BIN_EXE_mannheim"))
            .args(args)
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run_once()?, run_once()?);
    ensure(a.status.success() && b.status.success(), || {
        "simulate failed".into()
    })?;
    ensure(a.stdout == b.stdout, || "outputs differ".into())?;
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).map_err(|e| e.to_string())?;
    let single = v["single_error_trials"]
        .as_u64()
        .ok_or("missing single_error_trials")?;
    let corrected = v["single_error_corrected"]
        .as_u64()
        .ok_or("missing single_error_corrected")?;
    ensure(single > 0 && single == corrected, || {
        format!("{corrected}/{single} single errors corrected")
    })?;
    Ok(None)
}

#[test]
fn acceptance() {
    let codes: Vec<Code> = TEST_PRIMES.iter().map(|&p| code(p)).collect();
    let ms = Duration::from_millis;
    let s = Duration::from_secs;
    let results = [
        run(
            &Criterion {
                id: "AC01",
                title: "p=7 golden table",
                budget: ms(1),
            },
            ac01_p7_golden_table,
        ),
        run(
            &Criterion {
                id: "AC02",
                title: "p=193 golden labels",
                budget: ms(50),
            },
            ac02_p193_golden_labels,
        ),
        run(
            &Criterion {
                id: "AC03",
                title: "W_M triangle counterexample at p=193",
                budget: s(5),
            },
            ac03_counterexample,
        ),
        run(
            &Criterion {
                id: "AC04",
                title: "graph metric axioms, exhaustive p<=43",
                budget: s(10),
            },
            ac04_graph_metric_axioms,
        ),
        run(
            &Criterion {
                id: "AC05",
                title: "graph <= w_m <= w_M and weight-1 sets",
                budget: s(1),
            },
            ac05_weight_ordering,
        ),
        run(
            &Criterion {
                id: "AC06",
                title: "W_M(+-w^2)=2 vs w_m=graph=1 at p=7",
                budget: ms(1),
            },
            ac06_non_isomorphism,
        ),
        run(
            &Criterion {
                id: "AC07",
                title: "sphere-packing identity",
                budget: ms(1),
            },
            || ac07_packing_identity(&codes),
        ),
        run(
            &Criterion {
                id: "AC08",
                title: "exhaustive ball partition p=13,19",
                budget: s(10),
            },
            ac08_exhaustive_partition,
        ),
        run(
            &Criterion {
                id: "AC09",
                title: "decoder totality p=13,19",
                budget: s(10),
            },
            ac09_decoder_totality,
        ),
        run(
            &Criterion {
                id: "AC10",
                title: "w-cyclic closure and g | x^n - w",
                budget: s(1),
            },
            ac10_wcyclic_closure,
        ),
        run(
            &Criterion {
                id: "AC11",
                title: "product-graph BFS and lattice-scan oracles",
                budget: s(30),
            },
            ac11_oracle_equivalences,
        ),
        run(
            &Criterion {
                id: "AC12",
                title: "simulate determinism and single-error correction",
                budget: s(5),
            },
            ac12_cli_determinism,
        ),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
