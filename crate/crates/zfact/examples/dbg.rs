use std::time::Instant;
fn main() {
    let heavy = std::env::args().nth(1).as_deref() == Some("heavy");
    for &name in zfact::suites::SUITE_NAMES {
        if !heavy && matches!(name, "eta-bound" | "squarefree" | "refinement-powers" | "digit-roundtrip" | "factor-agreement" | "oracle-equivalence" | "lemma1-agreement") {
            continue;
        }
        if heavy && !matches!(name, "eta-bound" | "squarefree" | "refinement-powers" | "digit-roundtrip" | "factor-agreement" | "oracle-equivalence" | "lemma1-agreement") {
            continue;
        }
        let t0 = Instant::now();
        let rep = zfact::suites::run_suite(name).unwrap();
        println!(
            "{:22} cells={:8} violations={} conjecture_violations={} max_unequal={:?} in {:?}",
            rep.name, rep.cells, rep.violations, rep.conjecture_violations, rep.max_unequal, t0.elapsed()
        );
        for s in &rep.samples { println!("    {s}"); }
    }
}
