// The birational Weyl-group action: generators, words and translations.

use mu_tau::weyl::{apply_word, check_group_relations, check_shifts, FieldPoint, WeylWord};
use mu_tau::Result;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let p = FieldPoint::<f64>::random_constrained(&mut rng, 53);
    println!("f0 f1 f2 / (q x^2) = {:e} off 1", p.constraint_residual());

    let t = apply_word(&WeylWord::t(), &p)?;
    println!("T(a1) / a1 = {}", t.a[1].try_div(&p.a[1], "a1")?);

    // Translations commute.
    let t1t2 = apply_word(&WeylWord::t1().then(&WeylWord::t2()), &p)?;
    let t2t1 = apply_word(&WeylWord::t2().then(&WeylWord::t1()), &p)?;
    println!("|T1 T2 - T2 T1| = {:e}", t1t2.deviation(&t2t1));

    for r in check_group_relations(&p).iter().chain(&check_shifts(&p)) {
        let status = if r.skipped {
            "skip"
        } else if r.pass {
            "ok"
        } else {
            "FAIL"
        };
        println!("{status:>4} {:<24} {:e}", r.equation, r.residual);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("weyl group example");
}
