//! Exit criteria. Every check is exact set equality or containment.
//! Run with `cargo test --test acceptance -- --nocapture` to see one
//! PASS/FAIL line per criterion.

use std::path::Path;
use std::process::Command;
use std::sync::Arc;

use freecong::congruence::verify_well_defined;
use freecong::format::{parse_partition, parse_relation};
use freecong::oracle::{random_hom_instance, random_presentation};
use freecong::*;

type Outcome = std::result::Result<String, String>;

fn alphabet(symbols: &[&str]) -> Arc<Alphabet> {
    Arc::new(Alphabet::new(symbols.iter().copied()).unwrap())
}

fn universe(symbols: &[&str], bound: usize) -> Arc<Universe> {
    Universe::new(alphabet(symbols), bound).unwrap()
}

fn report(id: u32, title: &str, outcome: Outcome) {
    match &outcome {
        Ok(detail) => println!("[criterion {id}] PASS {title}: {detail}"),
        Err(detail) => println!("[criterion {id}] FAIL {title}: {detail}"),
    }
    if let Err(detail) = outcome {
        panic!("criterion {id} failed: {detail}");
    }
}

/// Named congruences of criterion 2, plus the kernel instances.
fn congruence_suite() -> Vec<(String, Partition)> {
    let mut suite = vec![
        (
            "abelian E={a,b} L=4".to_string(),
            abelian_congruence(&universe(&["a", "b"], 4)),
        ),
        (
            "parity E={a} L=6".to_string(),
            length_parity_congruence(&universe(&["a"], 6)),
        ),
        (
            "parity E={a,b} L=4".to_string(),
            length_parity_congruence(&universe(&["a", "b"], 4)),
        ),
    ];
    let u = universe(&["a", "b"], 4);
    for seed in 0..KERNEL_INSTANCES {
        let (t, j) = random_hom_instance(u.alphabet(), seed);
        suite.push((format!("kernel seed {seed}"), kernel(&j, &t, &u).unwrap()));
    }
    suite
}

const KERNEL_INSTANCES: u64 = 50;

fn criterion_1() -> Outcome {
    let u = universe(&["a", "b"], 5);
    if u.len() != 62 {
        return Err(format!("universe has {} words", u.len()));
    }
    let seed = PairRelation::from_words(u.clone(), &[("ab", "ba")]).unwrap();
    let generated = generate_congruence(&seed);
    let abelian = abelian_congruence(&u);
    if generated == abelian {
        Ok(format!("{} classes on 62 words", abelian.num_classes()))
    } else {
        Err("saturated partition differs from the permutation congruence".into())
    }
}

fn criterion_2() -> Outcome {
    let suite = congruence_suite();
    for (name, p) in &suite {
        let report = check_characterization(p);
        if !report.equality_holds {
            let (i, j) = report.witness.unwrap();
            let u = p.universe();
            return Err(format!("{name}: witness {} {}", u.word(i), u.word(j)));
        }
    }
    Ok(format!(
        "{} congruences, equality exact on all",
        suite.len()
    ))
}

fn criterion_3() -> Outcome {
    let u = universe(&["a", "b"], 4);
    let mut equal = 0;
    for seed in 0..200 {
        let p = random_equivalence(&u, seed);
        let chain = check_inclusion_chain(&p);
        if !chain.holds() {
            return Err(format!(
                "seed {seed}: {}",
                chain.render(&u).replace('\n', "; ")
            ));
        }
        let characterization = check_characterization(&p);
        if characterization.equality_holds && !characterization.is_l_consistent {
            return Err(format!("seed {seed}: equality without L-consistency"));
        }
        equal += usize::from(characterization.equality_holds);
    }
    Ok(format!(
        "200 samples, {equal} with equality (all L-consistent)"
    ))
}

fn criterion_4() -> Outcome {
    let u = universe(&["a", "b"], 3);
    let p = Partition::from_word_classes(u.clone(), &[&["a", "b"]]).unwrap();
    let verdict = check_congruence(&p);
    let Some(v) = verdict.counterexample else {
        return Err("is-congruence passed".into());
    };
    let (x, y) = v.extended(&u).ok_or("counterexample does not replay")?;
    if p.related(x, y) || !p.related(v.u, v.v) {
        return Err("counterexample does not replay".into());
    }
    let report = check_characterization(&p);
    let expected = (u.parse_index("aa").unwrap(), u.parse_index("ab").unwrap());
    if report.equality_holds || report.witness != Some(expected) {
        return Err(format!(
            "equality {} witness {:?}",
            report.equality_holds, report.witness
        ));
    }
    Ok(format!("FAIL {}; witness aa ab", v.render(&u)))
}

fn criterion_5() -> Outcome {
    let u = universe(&["a", "b"], 4);
    for seed in 0..KERNEL_INSTANCES {
        let (t, j) = random_hom_instance(u.alphabet(), seed);
        let r = factorize(&j, &t, &u).map_err(|e| format!("seed {seed}: {e}"))?;
        let q = &r.quotient;
        let f: Vec<usize> = u
            .words()
            .iter()
            .map(|w| extend_hom(&j, w, &t).unwrap())
            .collect();
        let mut images = r.g.clone();
        images.sort_unstable();
        images.dedup();
        if images.len() != r.g.len() {
            return Err(format!("seed {seed}: g is not injective"));
        }
        for a in 0..q.num_classes() {
            for b in 0..q.num_classes() {
                if let Some(c) = q.product(a, b) {
                    if r.g[c] != t.mul(r.g[a], r.g[b]) {
                        return Err(format!("seed {seed}: g(C{a} C{b}) != g(C{a}) g(C{b})"));
                    }
                }
            }
        }
        for (w, &value) in f.iter().enumerate() {
            if r.g[q.class_of(w)] != value {
                return Err(format!("seed {seed}: f != g . i at {}", u.word(w)));
            }
        }
    }
    Ok(format!(
        "{KERNEL_INSTANCES} kernels factor through a monomorphism"
    ))
}

fn criterion_6() -> Outcome {
    let u = universe(&["a", "b"], 4);
    let mut failures = Vec::new();
    for seed in 0..20 {
        let presentation = random_presentation(&u, seed, 3, 3);
        let generated = generate_congruence(&presentation);
        let mut disagreements = 0;
        let mut first = None;
        for i in 0..u.len() {
            for j in 0..u.len() {
                let reachable =
                    bfs_word_equivalence(&presentation, u.word(i), u.word(j), u.bound())
                        .unwrap()
                        .reachable;
                if reachable != generated.related(i, j) {
                    disagreements += 1;
                    first.get_or_insert((i, j, reachable));
                }
            }
        }
        if let Some((i, j, reachable)) = first {
            failures.push(format!(
                "seed {seed} {:?}: {disagreements} ordered pairs, first {} {} (bfs {reachable})",
                presentation.rendered(),
                u.word(i),
                u.word(j)
            ));
        }
    }
    if failures.is_empty() {
        Ok("20 presentations agree on U_4 x U_4".into())
    } else {
        Err(failures.join("; "))
    }
}

fn criterion_7() -> Outcome {
    let q = build_quotient(&length_parity_congruence(&universe(&["a"], 4)))
        .map_err(|e| e.to_string())?;
    // C0 = odd lengths, C1 = even lengths; C1 is the identity of Z/2
    let group = vec![vec![Some(1), Some(0)], vec![Some(0), Some(1)]];
    if q.table() != group.as_slice() {
        return Err(format!("parity table {:?}", q.table()));
    }
    let suite = congruence_suite();
    for (name, p) in &suite {
        let q = build_quotient(p).map_err(|e| format!("{name}: {e}"))?;
        if let Err(d) = verify_well_defined(&q) {
            return Err(format!("{name}: {d:?}"));
        }
    }
    Ok(format!(
        "parity table is Z/2; {} quotients well-defined",
        suite.len()
    ))
}

fn freecong(dir: &Path, args: &[&str]) -> (i32, Vec<u8>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_freecong"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout, out.stderr)
}

fn criterion_8() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let fixtures = [
        ("seed.txt", "alphabet a b\nbound 3\npair ab ba\n"),
        ("chain.txt", "alphabet a b\nbound 2\npair a b\npair b aa\n"),
        (
            "abelian.txt",
            "alphabet a b\nbound 3\nclass ab ba\nclass aab aba baa\nclass abb bab bba\n",
        ),
        ("bad-class.txt", "alphabet a b\nbound 3\nclass a b\n"),
        (
            "parity.txt",
            "alphabet a\nbound 4\nclass a aaa\nclass aa aaaa\n",
        ),
        ("max.txt", "elements 0 1\ntable\n0 1\n1 1\n"),
        ("map.txt", "map a 1\nmap b 0\n"),
        ("malformed-word.txt", "alphabet a b\nbound 2\npair ab abc\n"),
        (
            "malformed-directive.txt",
            "alphabet a b\nbound 2\nrule a b\n",
        ),
        (
            "malformed-overlap.txt",
            "alphabet a b\nbound 2\nclass a b\nclass b aa\n",
        ),
        ("malformed-table.txt", "elements 0 1\ntable\n0 1\n0 0\n"),
    ];
    for (name, text) in fixtures {
        std::fs::write(dir.path().join(name), text).map_err(|e| e.to_string())?;
    }
    // (args, expected exit code, output kind to re-parse)
    let cases: &[(&[&str], i32, Option<&str>)] = &[
        (&["close", "--tc", "chain.txt"], 0, Some("partition")),
        (&["close", "--ic", "seed.txt"], 0, Some("relation")),
        (&["close", "--sym", "seed.txt"], 0, Some("relation")),
        (&["min", "abelian.txt"], 0, Some("relation")),
        (&["is-congruence", "abelian.txt"], 0, None),
        (&["is-congruence", "bad-class.txt"], 1, None),
        (&["generate", "seed.txt"], 0, Some("partition")),
        (&["quotient", "parity.txt"], 0, None),
        (&["quotient", "parity.txt", "--dot"], 0, None),
        (&["quotient", "bad-class.txt"], 1, None),
        (
            &[
                "kernel",
                "max.txt",
                "map.txt",
                "--alphabet",
                "a,b",
                "--bound",
                "3",
            ],
            0,
            Some("partition"),
        ),
        (
            &[
                "kernel",
                "max.txt",
                "map.txt",
                "--alphabet",
                "a,b",
                "--bound",
                "3",
                "--factorize",
            ],
            0,
            Some("partition"),
        ),
        (
            &["abelianize", "--alphabet", "a,b", "--bound", "3"],
            0,
            Some("partition"),
        ),
        (&["verify-lemma", "bad-class.txt"], 0, None),
        (&["verify-theorem", "abelian.txt"], 0, None),
        (&["verify-theorem", "bad-class.txt"], 1, None),
        (&["word-eq", "seed.txt", "aab", "baa"], 0, None),
        (&["word-eq", "seed.txt", "aa", "bb"], 1, None),
        (&["close", "--ic", "malformed-word.txt"], 2, None),
        (&["close", "--tc", "malformed-directive.txt"], 2, None),
        (&["min", "malformed-overlap.txt"], 2, None),
        (
            &[
                "kernel",
                "malformed-table.txt",
                "map.txt",
                "--alphabet",
                "a,b",
                "--bound",
                "3",
            ],
            2,
            None,
        ),
        (&["min", "missing.txt"], 2, None),
        (&["word-eq", "seed.txt", "aab", "xyz"], 2, None),
        (
            &["abelianize", "--alphabet", "a,b", "--bound", "0"],
            2,
            None,
        ),
        (&["frobnicate"], 2, None),
    ];
    for (args, expected, kind) in cases {
        let first = freecong(dir.path(), args);
        let second = freecong(dir.path(), args);
        if first != second {
            return Err(format!("{args:?}: output differs between runs"));
        }
        let (code, stdout, stderr) = first;
        if code != *expected {
            return Err(format!(
                "{args:?}: exit {code}, expected {expected}; stderr {}",
                String::from_utf8_lossy(&stderr)
            ));
        }
        if code == 2
            && (stderr.is_empty()
                || stderr
                    .split(|&b| b == b'\n')
                    .filter(|l| !l.is_empty())
                    .count()
                    == 0)
        {
            return Err(format!("{args:?}: no diagnostic"));
        }
        let text = String::from_utf8(stdout).map_err(|e| e.to_string())?;
        match *kind {
            Some("relation") => {
                let r = parse_relation(&text).map_err(|e| format!("{args:?}: {e}"))?;
                if freecong::format::emit_relation(&r) != text {
                    return Err(format!("{args:?}: relation does not re-emit identically"));
                }
            }
            Some("partition") => {
                let p = parse_partition(&text).map_err(|e| format!("{args:?}: {e}"))?;
                let reemitted = freecong::format::emit_partition(&p);
                if !text.starts_with(&reemitted) {
                    return Err(format!("{args:?}: partition does not re-emit identically"));
                }
            }
            _ => {}
        }
    }
    let (_, stdout, _) = freecong(dir.path(), &["is-congruence", "bad-class.txt"]);
    if String::from_utf8_lossy(&stdout) != "bound 3\nFAIL a b a left\n" {
        return Err("is-congruence witness line".into());
    }
    let (_, _, stderr) = freecong(dir.path(), &["close", "--ic", "malformed-word.txt"]);
    if !String::from_utf8_lossy(&stderr).contains("malformed-word.txt:3:") {
        return Err("diagnostic does not name file and line".into());
    }
    Ok(format!(
        "{} invocations deterministic, exit codes as expected",
        cases.len()
    ))
}

#[test]
fn criterion_1_abelianization_pipeline() {
    report(1, "abelianization pipeline", criterion_1());
}

#[test]
fn criterion_2_forward_characterization() {
    report(2, "forward characterization at bound", criterion_2());
}

#[test]
fn criterion_3_inclusion_chain() {
    report(3, "inclusion chain on random equivalences", criterion_3());
}

#[test]
fn criterion_4_negative_fixture() {
    report(4, "negative fixture", criterion_4());
}

#[test]
fn criterion_5_factorization() {
    report(5, "factorization through kernel quotient", criterion_5());
}

#[test]
fn criterion_6_oracle_equivalence() {
    report(6, "saturation vs rewriting oracle", criterion_6());
}

#[test]
fn criterion_7_quotient_correctness() {
    report(7, "quotient correctness", criterion_7());
}

#[test]
fn criterion_8_cli_determinism() {
    report(8, "CLI determinism, round-trip, exit codes", criterion_8());
}
