#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use singularity_metric::evidence::SupportLevel;
use singularity_metric::{
    AssessmentMatrix, CellValue, Evidence, EvidenceId, LevelSchedule, LikelihoodPair, Sort, SortId,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const NAME_CHARS: &[char] = &[
    'a', 'Z', ' ', '"', '\\', '\'', 'é', '#', '=', '[', '\n', '7', 'ß',
];

fn text(rng: &mut ChaCha8Rng, max: usize) -> String {
    let n = rng.random_range(0..=max);
    (0..n).map(|_| *NAME_CHARS.choose(rng).unwrap()).collect()
}

/// A pair with ratio >= 1, components in (0, 1].
pub fn random_pair(rng: &mut ChaCha8Rng) -> LikelihoodPair {
    let given_h: f64 = rng.random_range(0.01..=1.0);
    let given_not_h = given_h * rng.random_range(0.005..=1.0);
    LikelihoodPair::new(given_h, given_not_h.max(1e-6)).unwrap()
}

/// Strictly increasing complementary ladder starting at the irrelevant rung.
pub fn random_schedule(rng: &mut ChaCha8Rng) -> LevelSchedule {
    let n = rng.random_range(1..=6);
    let mut given_h = 0.5;
    let mut levels = vec![SupportLevel::new(
        "irrelevant",
        LikelihoodPair::new(0.5, 0.5).unwrap(),
    )];
    for i in 1..n {
        given_h += rng.random_range(0.01..(0.999 - given_h) / 2.0);
        levels.push(SupportLevel::new(
            format!("rung-{i}"),
            LikelihoodPair::complementary(given_h).unwrap(),
        ));
    }
    let mut aliases = BTreeMap::new();
    if rng.random_bool(0.5) {
        aliases.insert("none".to_string(), "irrelevant".to_string());
    }
    LevelSchedule::new(levels, aliases)
}

/// A valid matrix mixing level names and explicit pairs.
pub fn random_matrix(rng: &mut ChaCha8Rng) -> AssessmentMatrix {
    let n_sorts = rng.random_range(1..=10);
    let n_evidences = rng.random_range(1..=12);
    let schedule = if rng.random_bool(0.5) {
        LevelSchedule::canonical()
    } else {
        random_schedule(rng)
    };
    let mut names: Vec<String> = schedule.levels().iter().map(|l| l.name.clone()).collect();
    names.extend(schedule.aliases().keys().cloned());

    let sorts: Vec<Sort> = (1..=n_sorts)
        .map(|i| Sort {
            id: SortId(i),
            name: text(rng, 12),
            description: text(rng, 30),
        })
        .collect();
    let evidences: Vec<Evidence> = (1..=n_evidences)
        .map(|i| Evidence {
            id: EvidenceId(i),
            name: text(rng, 12),
            year: rng.random_bool(0.7).then(|| rng.random_range(1900..2100)),
            description: text(rng, 30),
        })
        .collect();
    let mut cells = BTreeMap::new();
    for s in &sorts {
        for e in &evidences {
            let cell = if rng.random_bool(0.3) {
                CellValue::Pair(random_pair(rng))
            } else {
                CellValue::level(names.choose(rng).unwrap().clone())
            };
            cells.insert((s.id, e.id), cell);
        }
    }
    AssessmentMatrix {
        sorts,
        evidences,
        cells,
        schedule,
        notes: text(rng, 40),
    }
}

/// Random chain of likelihood ratios in [1, 100]. The cumulative odds stay
/// below 1e6: past that, `1 - p` carries too few bits for a 1e-9 recovery.
pub fn random_lr_chain(rng: &mut ChaCha8Rng) -> Vec<f64> {
    let n = rng.random_range(1..=10);
    let mut odds = 1.0;
    let mut chain = Vec::new();
    while chain.len() < n {
        let lr = rng.random_range(1.0..=100.0);
        if odds * lr > 1e6 {
            break;
        }
        odds *= lr;
        chain.push(lr);
    }
    if chain.is_empty() {
        chain.push(rng.random_range(1.0..=100.0));
    }
    chain
}

/// One-sort matrix whose cells carry the given ratios as explicit pairs.
pub fn chain_matrix(chain: &[f64]) -> AssessmentMatrix {
    let sort = Sort {
        id: SortId(1),
        name: "chain".into(),
        description: String::new(),
    };
    let evidences: Vec<Evidence> = (1..=chain.len() as u16)
        .map(|i| Evidence {
            id: EvidenceId(i),
            name: format!("e{i}"),
            year: None,
            description: String::new(),
        })
        .collect();
    let cells = chain
        .iter()
        .enumerate()
        .map(|(i, &lr)| {
            let pair = LikelihoodPair::new(1.0, 1.0 / lr).unwrap();
            ((SortId(1), EvidenceId(i as u16 + 1)), CellValue::Pair(pair))
        })
        .collect();
    AssessmentMatrix {
        sorts: vec![sort],
        evidences,
        cells,
        schedule: LevelSchedule::canonical(),
        notes: String::new(),
    }
}

pub fn rel_diff(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}
