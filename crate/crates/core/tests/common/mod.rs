#![allow(dead_code)]

use pyramid_evidence::evidence::{Clause, Frame, Literal, MassFunction};
use pyramid_evidence::knowledge::KnowledgeSource;
use rand::Rng;

pub const ATOMS: [&str; 4] = ["a", "b", "c", "d"];

pub fn frame(n: usize) -> Frame {
    Frame::new(ATOMS[..n].iter().copied()).unwrap()
}

/// Cube from one code per atom: 0 absent, 1 positive, 2 negated.
pub fn cube_from_codes(f: &Frame, codes: &[u8]) -> Clause {
    let lits = codes
        .iter()
        .zip(f.atoms())
        .filter_map(|(code, atom)| match code {
            1 => Some(Literal::pos(atom.as_str())),
            2 => Some(Literal::neg(atom.as_str())),
            _ => None,
        });
    Clause::conjunction(f, lits).unwrap()
}

/// Every conjunction over the frame, `3^n` of them, Θ included.
pub fn all_cubes(f: &Frame) -> Vec<Clause> {
    let n = f.len();
    (0..3usize.pow(n as u32))
        .map(|mut k| {
            let codes: Vec<u8> = (0..n)
                .map(|_| {
                    let c = (k % 3) as u8;
                    k /= 3;
                    c
                })
                .collect();
            cube_from_codes(f, &codes)
        })
        .collect()
}

/// Every disjunction of two or more positive atoms.
pub fn all_disjunctions(f: &Frame) -> Vec<Clause> {
    let n = f.len();
    (1u32..(1 << n))
        .filter(|m| m.count_ones() >= 2)
        .map(|m| {
            let names: Vec<&str> = (0..n)
                .filter(|i| m & (1 << i) != 0)
                .map(|i| f.atom(i))
                .collect();
            Clause::any_of(f, &names).unwrap()
        })
        .collect()
}

pub fn random_cube(rng: &mut impl Rng, f: &Frame) -> Clause {
    let codes: Vec<u8> = (0..f.len()).map(|_| rng.random_range(0..3u8)).collect();
    cube_from_codes(f, &codes)
}

/// Up to `max_focals` random cubes with random positive weights, normalized.
pub fn random_mass(rng: &mut impl Rng, f: &Frame, max_focals: usize) -> MassFunction {
    let k = rng.random_range(1..=max_focals);
    let focals: Vec<(Clause, f64)> = (0..k)
        .map(|_| (random_cube(rng, f), rng.random_range(0.01..1.0)))
        .collect();
    MassFunction::normalized(f, focals).unwrap()
}

/// Positive cubes or positive disjunctions plus a Θ share.
pub fn random_knowledge(rng: &mut impl Rng, f: &Frame, max_focals: usize) -> KnowledgeSource {
    let k = rng.random_range(1..=max_focals);
    let mut focals: Vec<(Clause, f64)> = (0..k)
        .map(|_| {
            let mask = rng.random_range(1u32..(1 << f.len()));
            let names: Vec<&str> = (0..f.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| f.atom(i))
                .collect();
            let clause = if rng.random_bool(0.5) {
                Clause::all_of(f, &names).unwrap()
            } else {
                Clause::any_of(f, &names).unwrap()
            };
            (clause, rng.random_range(0.01..1.0))
        })
        .collect();
    if rng.random_bool(0.7) {
        focals.push((Clause::theta(f), rng.random_range(0.01..1.0)));
    }
    let total: f64 = focals.iter().map(|(_, m)| m).sum();
    let mut scaled: Vec<(Clause, f64)> = focals.into_iter().map(|(c, m)| (c, m / total)).collect();
    // absorb rounding so the total is 1 to the last bit
    let drift = 1.0 - scaled.iter().map(|(_, m)| m).sum::<f64>();
    scaled[0].1 += drift;
    KnowledgeSource::new("h", f, scaled).unwrap()
}

use pyramid_evidence::oracle::OracleMass;

/// Largest per-focal difference between a fast-path mass function and an oracle mass.
pub fn max_mass_gap(fast: &MassFunction, oracle: &OracleMass) -> f64 {
    let lifted = OracleMass::from_mass(fast).unwrap();
    let mut gap: f64 = 0.0;
    for (set, m) in lifted.focals() {
        gap = gap.max((m - oracle.mass(set)).abs());
    }
    for (set, m) in oracle.focals() {
        gap = gap.max((m - lifted.mass(set)).abs());
    }
    gap
}
