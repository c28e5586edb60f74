//! # Hardness gadget against a SAT oracle
//!
//! Builds the reduction game for a few formulas, prints the special 2x2
//! block of payoffs for a satisfied and an unsatisfied formula, then checks
//! whether "the gadget has an equilibrium" matches "the formula is
//! satisfiable" on hand-picked and random formulas. Mismatches are printed
//! as findings.
//!
//! ```bash
//! cargo run -p election-game --example sat_gadget
//! ```

use election_game::sat::{
    build_gadget, compare_batch, gadget_payoffs, gadget_probabilities, CnfFormula,
    DEFAULT_GADGET_EPSILON,
};
use election_game::{Profile, SearchLimits};

fn block(formula: &CnfFormula) {
    let gg = build_gadget(formula, DEFAULT_GADGET_EPSILON).unwrap();
    let m = gg.instance.num_parties();
    for a in 0..2 {
        let row: Vec<String> = (0..2)
            .map(|b| {
                let mut s = vec![0; m];
                s[m - 2] = a;
                s[m - 1] = b;
                let s = Profile::new(s);
                let p = gadget_probabilities(&gg, &s);
                let r = gadget_payoffs(&gg, &s);
                format!("p={:.4} r=({:.2}, {:.2})", p[m - 2], r[m - 2], r[m - 1])
            })
            .collect();
        println!("    {}", row.join("  |  "));
    }
}

fn main() {
    let always = CnfFormula::new(3, vec![vec![1, -1]]).unwrap();
    let never = CnfFormula::new(3, vec![vec![1], vec![-1]]).unwrap();
    println!("special block, formula always true:");
    block(&always);
    println!("special block, formula never true:");
    block(&never);

    let mut formulas = vec![
        (
            "v1 & v2".to_string(),
            CnfFormula::new(2, vec![vec![1], vec![2]]).unwrap(),
        ),
        (
            "v1 & !v1 & (v2 | !v2)".to_string(),
            CnfFormula::new(2, vec![vec![1], vec![-1], vec![2, -2]]).unwrap(),
        ),
        (
            "!v2".to_string(),
            CnfFormula::new(2, vec![vec![-2]]).unwrap(),
        ),
        (
            "v3 & v4".to_string(),
            CnfFormula::new(4, vec![vec![3], vec![4]]).unwrap(),
        ),
        ("tautology".to_string(), always),
        ("contradiction".to_string(), never),
    ];
    for seed in 0..20u64 {
        let vars = 2 + (seed % 7) as usize;
        let f = CnfFormula::random_3cnf(vars, 2 * vars, seed).unwrap();
        formulas.push((format!("random#{seed}"), f));
    }
    let report = compare_batch(&formulas, DEFAULT_GADGET_EPSILON, SearchLimits::default()).unwrap();
    println!();
    print!("{report}");
}
