//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Random corpora use fixed seeds so runs are reproducible.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use cycle_splines::algebra::{
    decompose, king_product, king_product_in, reconstruct, triangulation_table_3cycle,
};
use cycle_splines::bases::{
    check_flow_up_basis, king_basis, smallest_leading_entry, triangulation_basis, FlowUpBasis,
};
use cycle_splines::cli;
use cycle_splines::numtheory::{gcd, gcd_all, lcm};
use cycle_splines::oracle::{brute_force_smallest, check_basis_by_definition, EnumerationBudget};
use cycle_splines::spline::{is_spline, pointwise_mul, satisfies, scalar_mul, EdgeLabeledCycle, Spline};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn cycle(labels: &[i64]) -> EdgeLabeledCycle {
    EdgeLabeledCycle::new(labels.iter().copied()).unwrap()
}

fn s(entries: &[i64]) -> Spline {
    Spline::from_ints(entries.iter().copied())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_cycle(rng: &mut StdRng, sizes: std::ops::RangeInclusive<usize>, max_label: i64) -> EdgeLabeledCycle {
    let n = rng.gen_range(sizes);
    EdgeLabeledCycle::new((0..n).map(|_| rng.gen_range(1..=max_label))).unwrap()
}

fn random_king_cycle(rng: &mut StdRng, sizes: std::ops::RangeInclusive<usize>, max_label: i64) -> EdgeLabeledCycle {
    loop {
        let c = random_cycle(rng, sizes.clone(), max_label);
        let n = c.len();
        if gcd(c.label(n - 1), c.label(n)).is_one() {
            return c;
        }
    }
}

fn exit_code(args: &[&str]) -> i32 {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["splines".to_string()];
    argv.extend(args.iter().map(|a| a.to_string()));
    cli::run(argv, &mut out, &mut err)
}

/// Leading entries expected from the closed form, written from scratch.
fn expected_leading(c: &EdgeLabeledCycle, k: usize) -> BigInt {
    if k == 0 {
        return BigInt::one();
    }
    lcm(c.label(k), &gcd_all(&c.labels()[k..]))
}

fn criterion_1() -> Outcome {
    let c = cycle(&[2, 5, 3]);
    for (v, arg) in [
        (s(&[1, 1, 1]), "1,1,1"),
        (s(&[0, 2, 12]), "0,2,12"),
        (s(&[0, 0, 15]), "0,0,15"),
    ] {
        ensure(satisfies(&c, &v).unwrap(), || format!("{v} rejected"))?;
        let code = exit_code(&["verify", "--cycle", "2,5,3", "--labels", arg]);
        ensure(code == 0, || format!("verify {arg} exited {code}"))?;
    }
    let code = exit_code(&["verify", "--cycle", "2,5,3", "--labels", "0,1,0"]);
    ensure(code == 1, || format!("verify 0,1,0 exited {code}"))
}

fn criterion_2() -> Outcome {
    let basis = king_basis(&cycle(&[3, 4, 8, 2, 5])).map_err(|e| e.to_string())?;
    let expected = [
        s(&[1, 1, 1, 1, 1]),
        s(&[0, 3, 3, 3, 15]),
        s(&[0, 0, 4, 4, 20]),
        s(&[0, 0, 0, 8, 40]),
        s(&[0, 0, 0, 0, 10]),
    ];
    ensure(basis.elements() == expected, || format!("{:?}", basis.elements()))
}

fn criterion_3() -> Outcome {
    let c = cycle(&[3, 4, 8, 2, 5]);
    let basis = king_basis(&c).unwrap();
    let p = king_product(&c, 1, 3).map_err(|e| e.to_string())?;
    ensure(p.render("K") == "3*K3 + 48*K4", || p.render("K"))?;
    let dense: Vec<BigInt> = [0, 0, 0, 3, 48].iter().map(|&v| BigInt::from(v)).collect();
    ensure(p.dense(5) == dense, || format!("{:?}", p.dense(5)))?;
    let combined = p.evaluate(&basis).unwrap();
    ensure(combined == s(&[0, 0, 0, 24, 600]), || combined.to_string())?;
    let direct = pointwise_mul(basis.element(1), basis.element(3)).unwrap();
    ensure(direct == combined, || direct.to_string())
}

fn criterion_4() -> Outcome {
    let c = cycle(&[2, 6, 15, 10]);
    let basis = triangulation_basis(&c).unwrap();
    let leading: Vec<BigInt> = (0..4).map(|k| basis.leading(k).clone()).collect();
    let expected: Vec<BigInt> = [1, 2, 30, 30].iter().map(|&v| BigInt::from(v)).collect();
    ensure(leading == expected, || format!("leading {leading:?}"))?;
    ensure(basis.element(1).entry(3) == &BigInt::from(50), || basis.element(1).to_string())?;
    for h in basis.elements() {
        ensure(satisfies(&c, h).unwrap(), || format!("{h} is not a spline"))?;
    }
    ensure(!satisfies(&c, &s(&[0, 2, 15, 200])).unwrap(), || {
        "(0,2,15,200) accepted".into()
    })
}

fn corpus(seed: u64) -> Vec<EdgeLabeledCycle> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..1000).map(|_| random_cycle(&mut rng, 3..=8, 30)).collect()
}

fn king_admissible(c: &EdgeLabeledCycle) -> bool {
    let n = c.len();
    gcd(c.label(n - 1), c.label(n)).is_one()
}

fn criterion_5() -> Outcome {
    let mut king_cycles = 0;
    for c in corpus(5) {
        for h in triangulation_basis(&c).unwrap().elements() {
            ensure(satisfies(&c, h).unwrap(), || format!("triangulation {h} on {c}"))?;
        }
        if king_admissible(&c) {
            king_cycles += 1;
            for k in king_basis(&c).unwrap().elements() {
                ensure(satisfies(&c, k).unwrap(), || format!("king {k} on {c}"))?;
            }
        }
    }
    ensure(king_cycles > 300, || format!("only {king_cycles} King-admissible cycles"))
}

fn criterion_6() -> Outcome {
    for c in corpus(5) {
        let mut bases = vec![triangulation_basis(&c).unwrap()];
        if king_admissible(&c) {
            bases.push(king_basis(&c).unwrap());
        }
        for basis in &bases {
            let report = check_flow_up_basis(&c, basis.elements()).map_err(|e| e.to_string())?;
            ensure(report.is_basis(), || format!("{} basis on {c}: {report:?}", basis.kind()))?;
            for k in 0..c.len() {
                ensure(basis.leading(k) == &expected_leading(&c, k), || {
                    format!("{} basis on {c}: leading entry {k}", basis.kind())
                })?;
            }
        }
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..200 {
        let c = random_king_cycle(&mut rng, 3..=8, 30);
        let n = c.len();
        let basis = king_basis(&c).unwrap();
        let top = &basis.element(n - 1).entries()[n - 1];
        for i in 0..n {
            for j in 0..n {
                let p = king_product_in(&basis, i, j).map_err(|e| format!("{c} ({i},{j}): {e}"))?;
                let direct = pointwise_mul(basis.element(i), basis.element(j)).unwrap();
                ensure(p.evaluate(&basis).unwrap() == direct, || format!("{c} ({i},{j})"))?;
                let (lo, hi) = (i.min(j), i.max(j));
                if lo > 0 {
                    let kj = &basis.element(hi).entries()[n - 1];
                    let ki = &basis.element(lo).entries()[n - 1];
                    let numerator = kj * (ki - c.label(lo));
                    ensure(numerator.is_multiple_of(top), || format!("{c} ({i},{j}) not integral"))?;
                }
            }
        }
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    let mut instances = 0;
    while instances < 240 {
        let c = random_cycle(&mut rng, 3..=5, 8);
        let n = c.len();
        let budget = EnumerationBudget::for_cycle(&c);
        let tri = triangulation_basis(&c).unwrap();
        let mut smallest = Vec::with_capacity(n);
        for k in 0..n {
            let g = brute_force_smallest(&c, k, &budget).map_err(|e| format!("{c} k={k}: {e}"))?;
            if k > 0 {
                let m = smallest_leading_entry(&c, k).unwrap();
                ensure(g.entries()[k] == m, || format!("{c} k={k}: {g} vs m_k = {m}"))?;
            }
            let h = tri.element(k);
            ensure(g.entries().iter().zip(h.entries()).all(|(a, b)| a <= b), || {
                format!("{c} k={k}: smallest {g} exceeds triangulation {h}")
            })?;
            smallest.push(g);
        }

        // a non-basis: scale one non-trivial element by 2
        let k = rng.gen_range(1..n);
        let mut scaled = tri.elements().to_vec();
        scaled[k] = scalar_mul(&BigInt::from(2), &scaled[k]);

        for candidates in [tri.elements().to_vec(), smallest, scaled] {
            let closed = check_flow_up_basis(&c, &candidates).map_err(|e| e.to_string())?.is_basis();
            let by_search =
                check_basis_by_definition(&c, &candidates, &budget).map_err(|e| e.to_string())?;
            ensure(closed == by_search, || format!("{c}: closed form {closed}, search {by_search}"))?;
        }
        instances += 1;
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    let mut rng = StdRng::seed_from_u64(9);
    let mut checked = 0;
    while checked < 1000 {
        let c = random_king_cycle(&mut rng, 3..=8, 30);
        let bases: [FlowUpBasis; 2] = [triangulation_basis(&c).unwrap(), king_basis(&c).unwrap()];
        let coefficients: Vec<BigInt> = (0..c.len())
            .map(|_| BigInt::from(rng.gen_range(-1_000_000i64..=1_000_000)))
            .collect();
        for basis in &bases {
            let spline = reconstruct(&coefficients, basis).unwrap();
            ensure(is_spline(&c, spline.entries()).unwrap().is_ok(), || format!("{spline} on {c}"))?;
            let back = decompose(&spline, basis).map_err(|e| e.to_string())?;
            ensure(back.values() == coefficients.as_slice(), || {
                format!("{} basis on {c}: {back} vs {coefficients:?}", basis.kind())
            })?;
        }
        checked += 1;
    }
    Ok(())
}

fn criterion_10() -> Outcome {
    let c = cycle(&[2, 5, 3]);
    let table = triangulation_table_3cycle(&c).map_err(|e| e.to_string())?;
    ensure(table.phi == Some(BigInt::from(8)), || format!("phi = {:?}", table.phi))?;
    let square = table.cell(1, 1);
    ensure(square.render("H") == "2*H1 + 8*H2", || square.render("H"))?;
    let h1 = table.basis.element(1);
    let direct = pointwise_mul(h1, h1).unwrap();
    ensure(direct == s(&[0, 4, 144]), || direct.to_string())?;
    ensure(square.evaluate(&table.basis).unwrap() == direct, || "H1^2 mismatch".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1. three-cycle figure splines accepted", criterion_1),
        ("2. King basis on {3,4,8,2,5}", criterion_2),
        ("3. K1*K3 = 3*K3 + 48*K4 on {3,4,8,2,5}", criterion_3),
        ("4. triangulation basis on {2,6,15,10}", criterion_4),
        ("5. spline-hood on 1000 random cycles", criterion_5),
        ("6. minimal leading entries on 1000 random cycles", criterion_6),
        ("7. King products on 200 random cycles", criterion_7),
        ("8. search agrees with closed forms on small cycles", criterion_8),
        ("9. decomposition round trip on 1000 vectors", criterion_9),
        ("10. 3-cycle triangulation table on {2,5,3}", criterion_10),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        let result = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        match result {
            Ok(()) => println!("PASS  {name}"),
            Err(why) => {
                failures += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
