//! The table of non-semisimple cyclic forms, one row per order.

use std::collections::BTreeSet;
use std::io::{self, Write};

use super::{is_semisimple, units, CyclicForm};
use crate::arith::inv_mod;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table1Row {
    pub n: u64,
    /// Smallest representative of each lens space `L(n, q)` of degree one,
    /// increasing.
    pub qs: Vec<u64>,
}

/// Smallest of `±q^{±1} mod n`: lens spaces `L(n, q)` and `L(n, q')` are
/// homeomorphic exactly when `q'` is one of these.
pub fn lens_representative(f: &CyclicForm) -> u64 {
    let n = f.order();
    if n <= 2 {
        return f.q();
    }
    let q = f.q();
    let inv = inv_mod(q, n).expect("q is a unit");
    [q, n - q, inv, n - inv]
        .into_iter()
        .min()
        .expect("nonempty")
}

/// Every order `n <= limit` carrying a non-semisimple form, with one `q`
/// per homeomorphism class of lens space `L(n, q)` whose form is not
/// semisimple. Inverting `q` keeps the form's isomorphism class, so these
/// classes refine the `(±q/n)` isomorphism classes.
pub fn table1(limit: u64) -> Vec<Table1Row> {
    (1..=limit)
        .filter_map(|n| {
            let qs: BTreeSet<u64> = units(n)
                .map(|q| CyclicForm { n, q })
                .filter(|f| !is_semisimple(f))
                .map(|f| lens_representative(&f))
                .collect();
            (!qs.is_empty()).then(|| Table1Row {
                n,
                qs: qs.into_iter().collect(),
            })
        })
        .collect()
}

fn join(qs: &[u64], sep: &str) -> String {
    qs.iter()
        .map(|q| q.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

/// `n: q1, q2, ...` per line.
pub fn write_text<W: Write + ?Sized>(rows: &[Table1Row], out: &mut W) -> io::Result<()> {
    for r in rows {
        writeln!(out, "{}: {}", r.n, join(&r.qs, ", "))?;
    }
    Ok(())
}

/// Header `n,qs`; the representatives are space-separated in the second field.
pub fn write_csv<W: Write + ?Sized>(rows: &[Table1Row], out: &mut W) -> io::Result<()> {
    writeln!(out, "n,qs")?;
    for r in rows {
        writeln!(out, "{},{}", r.n, join(&r.qs, " "))?;
    }
    Ok(())
}

/// One `{"n": .., "qs": [..]}` object per line.
pub fn write_json_lines<W: Write + ?Sized>(rows: &[Table1Row], out: &mut W) -> io::Result<()> {
    for r in rows {
        writeln!(out, "{{\"n\":{},\"qs\":[{}]}}", r.n, join(&r.qs, ","))?;
    }
    Ok(())
}
