//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Runs as part of `cargo test`.

use std::collections::HashSet;
use std::process::Command;
use std::time::{Duration, Instant};

use hopfarb::embedding::{embed_witness, embeds, oracle_embeds, verify_witness};
use hopfarb::invariants::{self, SeifertMatrix};
use hopfarb::minor_lab::{audit_monotone, check_excluded_family, evaluate, minimal_excluded};
use hopfarb::{count, enumerate, fingerprint, random_tree, universe, PlaneTree, Predicate, Sign};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn t(s: &str) -> PlaneTree {
    PlaneTree::parse(s).unwrap()
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let took = start.elapsed();
    if took < limit {
        Ok(took)
    } else {
        Err(format!("took {took:.2?}, limit {limit:?}"))
    }
}

fn counts() -> Check {
    let start = Instant::now();
    // 2^n times Catalan(n-1), with Catalan from its convolution recurrence
    let mut catalan = vec![1u64];
    for m in 1..8 {
        catalan.push((0..m).map(|i| catalan[i] * catalan[m - 1 - i]).sum());
    }
    for n in 1..=8usize {
        let expected = (1u64 << n) * catalan[n - 1];
        let listed = enumerate(n).map_err(|e| e.to_string())?.count() as u64;
        let counted: u64 = count(n).map_err(|e| e.to_string())?.try_into().unwrap();
        if counted != expected || listed != expected {
            return Err(format!("n={n}: count {counted}, enumerate {listed}, expected {expected}"));
        }
    }
    let took = within(start, Duration::from_secs(10))?;
    Ok(format!("n=1..8 match 2,4,16,80,448,2688,16896,109824 in {took:.2?}"))
}

fn invariant_table() -> Check {
    let cases = [
        ("+", 2, 0, "t - 1", 1, Some(2u32)),
        ("+(+)", 1, 1, "t^2 - t + 1", 2, Some(3)),
        ("+(-)", 1, 1, "t^2 - 3*t + 1", 0, Some(5)),
        // (1 - t)(t^2 + 1), leading coefficient made positive
        ("+(+(+))", 2, 1, "t^3 - t^2 + t - 1", 3, None),
    ];
    for (text, b, g, delta, sigma, det) in cases {
        let fp = fingerprint(&t(text));
        let got = (fp.b, fp.g, fp.alexander.to_string(), fp.signature);
        if got != (b, g, delta.to_string(), sigma) || det.is_some_and(|d| fp.determinant != d.into()) {
            return Err(format!("{text}: got {fp}"));
        }
    }
    Ok("4 reference tuples match".into())
}

fn dp_matches_oracle() -> Check {
    let start = Instant::now();
    let small = universe(4).map_err(|e| e.to_string())?;
    let large = universe(5).map_err(|e| e.to_string())?;
    let mut pairs = 0;
    for a in small.trees() {
        for b in large.trees() {
            pairs += 1;
            if embeds(a, b) != oracle_embeds(a, b).map_err(|e| e.to_string())? {
                return Err(format!("disagreement on {a} -> {b}"));
            }
        }
    }
    let took = within(start, Duration::from_secs(300))?;
    Ok(format!("{pairs} pairs, 0 disagreements in {took:.2?}"))
}

fn witnesses() -> Check {
    let u = universe(4).map_err(|e| e.to_string())?;
    let mut positive = 0;
    for a in u.trees() {
        for b in u.trees() {
            if !embeds(a, b) {
                continue;
            }
            positive += 1;
            match embed_witness(a, b) {
                Some(w) if verify_witness(a, b, &w) => {}
                Some(_) => return Err(format!("rejected witness for {a} -> {b}")),
                None => return Err(format!("no witness for {a} -> {b}")),
            }
        }
    }
    Ok(format!("{positive}/{positive} positive pairs certified"))
}

fn monotone_audit() -> Check {
    for q in ["genus", "betti"] {
        let v = audit_monotone(q, 5).map_err(|e| e.to_string())?;
        if let Some(first) = v.first() {
            return Err(format!("{q}: {} violations, e.g. {first:?}", v.len()));
        }
    }
    Ok("genus and betti: no violations up to size 5".into())
}

fn basis_flips() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for trial in 0..1000 {
        let n = rng.gen_range(1..=8);
        let tree = random_tree(n, rng.gen()).map_err(|e| e.to_string())?;
        let signs: Vec<Sign> = (0..n).map(|_| if rng.gen() { Sign::Plus } else { Sign::Minus }).collect();
        let v = SeifertMatrix::of_tree(&tree);
        if v.flip_basis(&signs).fingerprint() != v.fingerprint() {
            return Err(format!("trial {trial}: {tree} with {signs:?}"));
        }
    }
    Ok("1000/1000 trials unchanged".into())
}

fn mining() -> Check {
    let size = Predicate::parse("size_le:3").unwrap();
    let mined = minimal_excluded(&size, 5).map_err(|e| e.to_string())?;
    let expected: HashSet<String> = enumerate(4).unwrap().map(|t| t.to_text()).collect();
    let got: HashSet<String> = mined.iter().map(PlaneTree::to_text).collect();
    if mined.len() != 80 || got != expected {
        return Err(format!("size_le:3 mined {} trees", mined.len()));
    }
    let positive = Predicate::parse("all_positive").unwrap();
    let mined_pos = minimal_excluded(&positive, 4).map_err(|e| e.to_string())?;
    if mined_pos != vec![t("-")] {
        return Err(format!("all_positive mined {mined_pos:?}"));
    }
    for (p, family, nmax) in [(&size, &mined, 5), (&positive, &mined_pos, 4)] {
        for tree in universe(nmax).unwrap().trees() {
            if check_excluded_family(tree, family) != evaluate(p, tree).unwrap() {
                return Err(format!("{p}: family disagrees with evaluate on {tree}"));
            }
        }
    }
    Ok("size_le:3 -> 80 size-4 trees, all_positive -> {-}, families reproduce evaluate".into())
}

fn quasi_order() -> Check {
    let u = universe(4).map_err(|e| e.to_string())?;
    let ts = u.trees();
    let rel: Vec<Vec<bool>> = ts.iter().map(|a| ts.iter().map(|b| embeds(a, b)).collect()).collect();
    for i in 0..ts.len() {
        if !rel[i][i] {
            return Err(format!("not reflexive at {}", ts[i]));
        }
        for j in 0..ts.len() {
            for k in 0..ts.len() {
                if rel[i][j] && rel[j][k] && !rel[i][k] {
                    return Err(format!("not transitive: {} {} {}", ts[i], ts[j], ts[k]));
                }
            }
        }
    }
    Ok(format!("reflexive and transitive on {} trees", ts.len()))
}

fn knots_at_one() -> Check {
    let start = Instant::now();
    let u = universe(7).map_err(|e| e.to_string())?;
    let mut knots = 0;
    for tree in u.trees().iter().filter(|t| invariants::boundary_components(t) == 1) {
        knots += 1;
        let v = invariants::alexander_at_one(tree);
        if v != 1.into() && v != (-1).into() {
            return Err(format!("{tree}: Δ(1) = {v}"));
        }
    }
    let took = within(start, Duration::from_secs(120))?;
    Ok(format!("{knots} knots, Δ(1) = ±1 for all, in {took:.2?}"))
}

fn cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_hopfarb")).args(args).output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("hopfarb {args:?}: {}", String::from_utf8_lossy(&out.stderr)));
    }
    Ok(out.stdout)
}

fn cli_round_trip() -> Check {
    let u = universe(6).map_err(|e| e.to_string())?;
    for tree in u.trees() {
        let text = tree.to_text();
        if PlaneTree::parse(&text).ok().as_ref() != Some(tree) {
            return Err(format!("library round trip fails on {text}"));
        }
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let listing: String = u.trees().iter().map(|t| t.to_text() + "\n").collect();
    let path = dir.path().join("universe6.txt");
    std::fs::write(&path, &listing).map_err(|e| e.to_string())?;
    let printed = cli(&["parse", "--file", path.to_str().unwrap()])?;
    if printed != listing.as_bytes() {
        return Err("hopfarb parse changed some tree".into());
    }

    let runs: &[&[&str]] = &[
        &["enum", "--size", "5"],
        &["poset", "--max-size", "5", "--csv", "CSV", "--dot", "DOT"],
        &["mine", "--predicate", "genus_le:1", "--max-size", "5"],
        &["audit", "--quantity", "top_defect_ub", "--max-size", "5"],
        &["classes", "--size", "5", "--format", "json"],
        &["random", "--size", "8", "--seed", "42"],
    ];
    for args in runs {
        let mut seen: Option<Vec<u8>> = None;
        for (round, jobs) in ["1", "2", "4", "1", "3"].iter().enumerate() {
            let csv = dir.path().join(format!("p{round}.csv"));
            let dot = dir.path().join(format!("p{round}.dot"));
            let mut full: Vec<&str> = args
                .iter()
                .map(|a| match *a {
                    "CSV" => csv.to_str().unwrap(),
                    "DOT" => dot.to_str().unwrap(),
                    other => other,
                })
                .collect();
            full.extend(["--jobs", jobs]);
            let mut bytes = cli(&full)?;
            if csv.exists() {
                bytes.extend(std::fs::read(&csv).unwrap());
                bytes.extend(std::fs::read(&dot).unwrap());
            }
            match &seen {
                None => seen = Some(bytes),
                Some(first) if *first != bytes => return Err(format!("{args:?} differs with --jobs {jobs}")),
                Some(_) => {}
            }
        }
    }
    Ok(format!("{} trees round-trip; {} commands byte-identical over 5 runs with --jobs 1..4", u.len(), runs.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("enumeration counts", counts),
        ("invariant table", invariant_table),
        ("DP agrees with reduction oracle", dp_matches_oracle),
        ("witness soundness", witnesses),
        ("monotonicity audit", monotone_audit),
        ("basis-flip invariance", basis_flips),
        ("obstruction mining", mining),
        ("quasi-order axioms", quasi_order),
        ("knots have Δ(1) = ±1", knots_at_one),
        ("CLI round trip and determinism", cli_round_trip),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", k + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
