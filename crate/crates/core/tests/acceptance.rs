//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines come out in order and
//! unbuffered. Exits non-zero if any criterion fails.
//!
//! Criterion 9 reads the catalog named by `DELTAGROUP_COMPLETE_CATALOG`,
//! falling back to the bundled `data/smallgroups-64.txt`.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use deltagroup::catalog::{bundled_desk_catalog, Catalog};
use deltagroup::census::{run_census, survey, verify_bound, verify_miller, EqualityFamily};
use deltagroup::constructors::{build, family_suite, GroupSpec};
use deltagroup::invariants::{delta, order_census};
use deltagroup::iso::IsoData;
use deltagroup::{oracle, GroupId};

type Outcome = Result<String, String>;

fn id(order: usize, index: usize) -> GroupId {
    GroupId { order, index }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn truncated(catalog: &Catalog, max_order: usize) -> Catalog {
    Catalog {
        entries: catalog.entries.iter().filter(|e| e.order <= max_order).cloned().collect(),
        complete_orders: catalog.complete_orders.iter().copied().filter(|&o| o <= max_order).collect(),
        comments: Vec::new(),
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn criterion_1() -> Outcome {
    let catalog = truncated(&bundled_desk_catalog(), 8);
    let start = Instant::now();
    let result = run_census(&catalog, 1).map_err(err)?;
    let elapsed = start.elapsed();
    let names: Vec<&str> = result.per_delta[&1].iter().map(|r| r.name.as_str()).collect();
    ensure(names == ["C3", "C4", "S3", "D8"], || format!("got {names:?}"))?;
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("difference 1 is exactly C3, C4, S3, D8 ({elapsed:.2?})"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let result = run_census(&bundled_desk_catalog(), 5).map_err(err)?;
    let elapsed = start.elapsed();
    let counts: Vec<usize> = result.per_delta.values().map(Vec::len).collect();
    ensure(counts == [4, 4, 3, 11, 3], || format!("counts {counts:?}"))?;
    within(elapsed, Duration::from_secs(5))?;
    Ok(format!("bucket counts {counts:?} ({elapsed:.2?})"))
}

fn criterion_3() -> Outcome {
    let expected = [
        id(16, 2),
        id(16, 4),
        id(16, 8),
        id(16, 12),
        id(18, 1),
        id(20, 4),
        id(24, 6),
        id(32, 27),
        id(32, 34),
        id(32, 49),
    ];
    let catalog = bundled_desk_catalog();
    for gid in expected {
        let entry = catalog.entry(gid).ok_or_else(|| format!("{gid} missing from desk catalog"))?;
        let d = delta(&entry.group().map_err(err)?).map_err(err)?;
        ensure(d == 6, || format!("{gid} has difference {d}"))?;
    }
    Ok(format!("all {} listed groups of order at most 32 have difference 6", expected.len()))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let catalog = bundled_desk_catalog();
    let max_delta = catalog.entries.iter().map(|e| e.order).max().unwrap_or(0) as u64;
    let result = run_census(&catalog, max_delta).map_err(err)?;
    let violations = verify_bound(&result);
    let elapsed = start.elapsed();
    ensure(violations.is_empty(), || format!("{} violations, first: {}", violations.len(), violations[0]))?;
    let equality: Vec<GroupId> = result
        .per_delta
        .values()
        .flatten()
        .filter(|r| r.report.equality_case)
        .map(|r| r.id)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    ensure(equality == [id(8, 3), id(16, 11), id(32, 46)], || {
        format!("equality cases {equality:?}")
    })?;
    within(elapsed, Duration::from_secs(5))?;
    Ok(format!("no violations, equality at [8,3] [16,11] [32,46] ({elapsed:.2?})"))
}

fn criterion_5() -> Outcome {
    let records = survey(&bundled_desk_catalog(), None).map_err(err)?;
    for r in &records {
        ensure(r.star.holds(), || format!("{} fails: {:?}", r.id, r.star))?;
    }
    let mut built: Vec<_> = family_suite().map_err(err)?.into_iter().map(|(g, _)| g).collect();
    let extra = [
        "SL(2,3)", "GL(2,3)", "S4", "A5", "Q16", "QD16", "C3:C8@2", "C2xQ8", "D8xS3", "C5:C4@2", "C7:C3@2",
        "(C3xC3):C2@[2,0;0,2]", "C2^5", "C4xC4", "Q8xC3", "A4xC2",
    ];
    for s in extra {
        built.push(build(&s.parse::<GroupSpec>().map_err(err)?).map_err(err)?);
    }
    for g in &built {
        let star = order_census(g).star_identity().map_err(err)?;
        ensure(star.holds(), || format!("constructed group of order {} fails: {star:?}", g.order()))?;
    }
    Ok(format!("identities exact for {} catalog and {} constructed groups", records.len(), built.len()))
}

fn criterion_6() -> Outcome {
    let catalog = bundled_desk_catalog();
    let violations = verify_miller(&catalog).map_err(err)?;
    ensure(violations.is_empty(), || format!("{} violations, first: {}", violations.len(), violations[0]))?;
    let family = EqualityFamily::default();
    let mut equality = 0;
    for r in survey(&catalog, None).map_err(err)? {
        if !r.report.is_elementary_abelian_2() && r.report.miller_equality() {
            equality += 1;
            let g = r.group.as_ref().expect("survey keeps groups");
            ensure(family.contains(g), || format!("{} attains equality outside D8 x C2^k", r.id))?;
        }
    }
    Ok(format!("no violations, {equality} equality cases all D8 x C2^k"))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let catalog = bundled_desk_catalog();
    let mut below_eight = 0;
    for n in 1..=oracle::MAX_ORDER {
        let classes: Vec<IsoData> = oracle::enumerate_order(n).map_err(err)?.iter().map(IsoData::from_group).collect();
        if n < 8 {
            below_eight += classes.len();
        }
        let entries: Vec<IsoData> = catalog
            .entries_of_order(n)
            .map(|e| e.group().map(|g| IsoData::from_group(&g)))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        ensure(classes.len() == entries.len(), || {
            format!("order {n}: {} enumerated, {} in catalog", classes.len(), entries.len())
        })?;
        let mut used = vec![false; entries.len()];
        for (k, c) in classes.iter().enumerate() {
            let j = (0..entries.len())
                .find(|&j| !used[j] && entries[j].is_isomorphic(c))
                .ok_or_else(|| format!("order {n}: enumerated class #{} unmatched", k + 1))?;
            used[j] = true;
        }
    }
    let elapsed = start.elapsed();
    ensure(below_eight == 9, || format!("{below_eight} classes below order 8"))?;
    within(elapsed, Duration::from_secs(60))?;
    Ok(format!(
        "9 classes below order 8, bijection through order {} ({elapsed:.2?})",
        oracle::MAX_ORDER
    ))
}

fn criterion_8() -> Outcome {
    let suite = family_suite().map_err(err)?;
    ensure(suite.len() == 25, || format!("suite has {} groups", suite.len()))?;
    for (g, expected) in &suite {
        let d = delta(g).map_err(err)?;
        ensure(d == *expected, || format!("{:?} has difference {d}, table says {expected}", g.id()))?;
    }
    let golden = [("SL(2,3)", 11), ("GL(2,3)", 20), ("S4", 7), ("A4", 4), ("A5", 28)];
    for (spec, expected) in golden {
        let g = build(&spec.parse::<GroupSpec>().map_err(err)?).map_err(err)?;
        let d = delta(&g).map_err(err)?;
        ensure(d == expected, || format!("{spec} has difference {d}, expected {expected}"))?;
    }
    Ok("25 family groups and SL(2,3), GL(2,3), S4, A4, A5 match".into())
}

fn criterion_9() -> Outcome {
    let path = std::env::var("DELTAGROUP_COMPLETE_CATALOG")
        .unwrap_or_else(|_| concat!(env!("CARGO_MANIFEST_DIR"), "/data/smallgroups-64.txt").to_string());
    let start = Instant::now();
    let catalog = Catalog::read(&path).map_err(|e| format!("{path}: {e}"))?;
    let result = run_census(&catalog, 8).map_err(err)?;
    let elapsed = start.elapsed();
    ensure(result.complete_through >= 64, || {
        format!("{path} is complete only through {}", result.complete_through)
    })?;
    let counts: Vec<usize> = result.per_delta.values().map(Vec::len).collect();
    ensure(counts == [4, 4, 3, 11, 3, 13, 3, 15], || format!("counts {counts:?}"))?;
    within(elapsed, Duration::from_secs(600))?;
    Ok(format!("bucket counts {counts:?} from {} entries ({elapsed:.2?})", catalog.entries.len()))
}

fn criterion_10() -> Outcome {
    use deltagroup::report::{emit_report, Format};
    let catalog = bundled_desk_catalog();
    let a = emit_report(&run_census(&catalog, 5).map_err(err)?, Format::Text);
    let b = emit_report(&run_census(&catalog, 5).map_err(err)?, Format::Text);
    ensure(a == b, || "text reports differ".into())?;
    Ok(format!("two runs byte-identical ({} bytes)", a.len()))
}

fn main() {
    let criteria: [fn() -> Outcome; 10] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    let mut failed = 0;
    for (i, run) in criteria.iter().enumerate() {
        match run() {
            Ok(msg) => println!("PASS criterion {}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {}: {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
