//! Compiled-in instances, addressable as `fixtures:<name>`.
//!
//! * `table1`: three parties, hardmax, four equilibria at half the optimal welfare.
//! * `table2`: three parties, softmax, no pure equilibrium.
//! * `table3` / `table3:M,BETA,EPS`: the parametric family whose hardmax
//!   price of anarchy approaches the number of parties.

use crate::error::{Error, Result};
use crate::model::{Candidate, GameInstance, InstanceData, Party};

pub const NAMES: &[&str] = &["table1", "table2", "table3"];

pub const TABLE3_DEFAULT: (usize, f64, f64) = (3, 100.0, 0.001);

fn named(rows: &[[[f64; 3]; 2]; 3]) -> InstanceData {
    InstanceData {
        beta: 100.0,
        parties: rows
            .iter()
            .enumerate()
            .map(|(i, cands)| {
                Party::named(
                    format!("P{}", i + 1),
                    cands.iter().map(|u| Candidate::new(u.to_vec())).collect(),
                )
            })
            .collect(),
    }
}

/// Three parties under hardmax whose equilibria all reach only half the
/// optimal welfare.
pub fn table1() -> GameInstance {
    let rows = [
        [[50.0, 0.0, 0.0], [49.0, 29.0, 22.0]],
        [[15.0, 31.0, 0.0], [16.0, 30.0, 0.0]],
        [[10.0, 10.0, 24.0], [10.0, 10.0, 23.0]],
    ];
    GameInstance::validate(named(&rows), false).expect("table1 fixture is valid")
}

/// Three egoistic parties with no pure equilibrium under softmax.
pub fn table2() -> GameInstance {
    let rows = [
        [[29.0, 4.0, 21.0], [27.0, 43.0, 3.0]],
        [[23.0, 59.0, 7.0], [3.0, 57.0, 38.0]],
        [[8.0, 32.0, 54.0], [20.0, 13.0, 53.0]],
    ];
    GameInstance::validate(named(&rows), false).expect("table2 fixture is valid")
}

/// The `m`-party tightness family.
///
/// Party 1 fields `(beta/m + 3 eps, 0, ..., 0)` and a consensus candidate
/// worth `beta/m` to everyone; party `j >= 2` fields `beta/m + 2 eps` and
/// `beta/m + eps` for its own supporters only.
pub fn table3(m: usize, beta: f64, epsilon: f64) -> Result<GameInstance> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!(
            "table3 needs m >= 2, got {m}"
        )));
    }
    if !(beta.is_finite() && beta > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "table3 needs beta > 0, got {beta}"
        )));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "table3 needs epsilon in (0,1), got {epsilon}"
        )));
    }
    let share = beta / m as f64;
    if share + 3.0 * epsilon > beta {
        return Err(Error::InvalidParameter(format!(
            "beta/m + 3 epsilon = {} exceeds beta = {beta}",
            share + 3.0 * epsilon
        )));
    }
    let own = |i: usize, v: f64| {
        let mut u = vec![0.0; m];
        u[i] = v;
        Candidate::new(u)
    };
    let mut parties = vec![Party::named(
        "P1",
        vec![
            own(0, share + 3.0 * epsilon),
            Candidate::new(vec![share; m]),
        ],
    )];
    for j in 1..m {
        parties.push(Party::named(
            format!("P{}", j + 1),
            vec![own(j, share + 2.0 * epsilon), own(j, share + epsilon)],
        ));
    }
    GameInstance::validate(InstanceData { beta, parties }, false)
}

/// Resolves a fixture name, with optional `table3:M,BETA,EPS` parameters.
pub fn by_name(name: &str) -> Result<GameInstance> {
    let (base, params) = match name.split_once(':') {
        Some((b, p)) => (b, Some(p)),
        None => (name, None),
    };
    match (base, params) {
        ("table1", None) => Ok(table1()),
        ("table2", None) => Ok(table2()),
        ("table3", None) => {
            let (m, beta, eps) = TABLE3_DEFAULT;
            table3(m, beta, eps)
        }
        ("table3", Some(p)) => {
            let parts: Vec<&str> = p.split(',').map(str::trim).collect();
            let bad =
                || Error::InvalidParameter(format!("expected table3:M,BETA,EPS, got {name:?}"));
            if parts.len() != 3 {
                return Err(bad());
            }
            let m = parts[0].parse().map_err(|_| bad())?;
            let beta = parts[1].parse().map_err(|_| bad())?;
            let eps = parts[2].parse().map_err(|_| bad())?;
            table3(m, beta, eps)
        }
        _ => Err(Error::InvalidParameter(format!(
            "unknown fixture {name:?}; known: {}",
            NAMES.join(", ")
        ))),
    }
}
