#![allow(dead_code)]

use avail_core::constructions::{
    build_partition_family, functional_code, partition_code, product_code, projective_functionals,
};
use avail_core::{AvailabilityCode, CodeKind, FiniteField};

pub struct Entry {
    pub label: String,
    pub code: AvailabilityCode,
}

fn push(out: &mut Vec<Entry>, label: String, code: AvailabilityCode) {
    if code.t() >= 2 {
        let h = code.h().transpose();
        let tr = AvailabilityCode::new(h, code.t() - 1, code.r() + 1, CodeKind::Strict);
        out.push(Entry {
            label: format!("{label}^T"),
            code: tr,
        });
    }
    out.push(Entry { label, code });
}

/// Every strict code the constructions produce at desk scale, together with
/// the transposes of those with `t >= 2`.
pub fn strict_catalog() -> Vec<Entry> {
    let mut out = Vec::new();
    for (r, levels) in [(1usize, 1..=4u32), (2, 1..=2), (3, 2..=2), (4, 2..=2)] {
        for g in levels {
            let family = build_partition_family(r, g).unwrap();
            for t in 1..=family.len() {
                let code = partition_code(&family, t, None).unwrap();
                push(&mut out, format!("partition r={r} g={g} t={t}"), code);
            }
        }
    }
    for q in [2u64, 3, 4, 5] {
        let field = FiniteField::new(q).unwrap();
        for t in 1..=(q as usize + 1) {
            let maps = projective_functionals(&field, t).unwrap();
            let code = functional_code(&field, 2, 1, &maps).unwrap();
            push(&mut out, format!("functional q={q} t={t}"), code);
        }
    }
    for (r, t) in [
        (1, 1),
        (1, 2),
        (1, 3),
        (1, 4),
        (2, 2),
        (2, 3),
        (3, 2),
        (3, 3),
        (4, 2),
    ] {
        push(
            &mut out,
            format!("product r={r} t={t}"),
            product_code(r, t).unwrap(),
        );
    }
    out
}

/// The catalog restricted to dimension at most `k_max`.
pub fn small_catalog(k_max: usize) -> Vec<Entry> {
    strict_catalog()
        .into_iter()
        .filter(|e| e.code.k() <= k_max)
        .collect()
}
