//! Published reference values bundled with the crate.
//!
//! `table1` holds Eckart-Hellmann levels for three strength sets at
//! `hbar = mu = 1`; `table4` holds Hellmann levels (`C = 2`, `D = -1`) at
//! `hbar = 2 mu = 1`. Both are used only for comparison columns.

use crate::potential::PotentialParams;
use crate::spectra::QuantumNumbers;

const TABLE1: &str = include_str!("../data/table1.csv");
const TABLE4: &str = include_str!("../data/table4.csv");

/// `(A, B, C, D)` of the three strength columns of table 1.
pub const TABLE1_SETS: [(f64, f64, f64, f64); 3] = [
    (0.01, 0.5, 1.0, -1.0),
    (0.005, 0.25, 2.0, -2.0),
    (0.0025, 0.125, 4.0, -4.0),
];

pub const TABLE4_C: f64 = 2.0;
pub const TABLE4_D: f64 = -1.0;

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceValue {
    /// Label as printed (`1S`, `3p`, ...).
    pub label: String,
    pub qn: QuantumNumbers,
    pub alpha: f64,
    /// Strength column index for table 1, always 0 for table 4.
    pub set: usize,
    pub params: PotentialParams,
    pub energy: f64,
}

fn rows(text: &str) -> impl Iterator<Item = Vec<&str>> {
    text.lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split(',').collect())
}

fn num(s: &str) -> f64 {
    s.trim()
        .parse()
        .unwrap_or_else(|_| panic!("bad number {s:?} in bundled table"))
}

fn qn(label: &str) -> QuantumNumbers {
    QuantumNumbers::from_label(label).expect("bundled labels are valid")
}

pub fn table4() -> Vec<ReferenceValue> {
    rows(TABLE4)
        .map(|f| {
            let alpha = num(f[1]);
            ReferenceValue {
                label: f[0].to_string(),
                qn: qn(f[0]),
                alpha,
                set: 0,
                params: PotentialParams::hellmann(TABLE4_C, TABLE4_D, alpha).expect("valid"),
                energy: num(f[2]),
            }
        })
        .collect()
}

/// Row-major over the printed table: for each (state, alpha) the three sets.
pub fn table1() -> Vec<ReferenceValue> {
    let mut out = Vec::new();
    for f in rows(TABLE1) {
        let alpha = num(f[1]);
        for (set, &(a, b, c, d)) in TABLE1_SETS.iter().enumerate() {
            out.push(ReferenceValue {
                label: f[0].to_string(),
                qn: qn(f[0]),
                alpha,
                set,
                params: PotentialParams::new(a, b, c, d, alpha).expect("valid"),
                energy: num(f[2 + set]),
            });
        }
    }
    out
}
