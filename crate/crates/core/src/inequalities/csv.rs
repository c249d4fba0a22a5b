//! Fixed-header CSV form of inequality reports.

use super::report::{build_report, InequalityKind, InequalityReport};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::sloshing::DepthSpec;

pub const CSV_HEADER: [&str; 20] = [
    "shape_id",
    "P",
    "A",
    "mu1",
    "mu1_err",
    "nu1",
    "conj_value",
    "conj_bound",
    "conj_margin",
    "iso_value",
    "iso_bound",
    "iso_margin",
    "szego_value",
    "szego_bound",
    "szego_margin",
    "isop_value",
    "isop_bound",
    "isop_margin",
    "applicable_conj",
    "applicable_szego",
];

/// 12 significant digits.
pub fn format_value<T: Real>(v: T) -> String {
    format!("{:.11e}", v)
}

pub fn csv_record<T: Real>(r: &InequalityReport<T>) -> Vec<String> {
    let mut row = vec![
        r.shape_id.clone(),
        format_value(r.perimeter),
        format_value(r.area),
        format_value(r.mu1),
        format_value(r.mu1_err),
        format_value(r.nu1),
    ];
    for kind in InequalityKind::ALL {
        let rec = r.record(kind);
        row.push(format_value(rec.value));
        row.push(format_value(rec.bound));
        row.push(format_value(rec.margin));
    }
    row.push(r.record(InequalityKind::Conj).applicable.to_string());
    row.push(r.record(InequalityKind::Szego).applicable.to_string());
    row
}

pub fn write_csv<'a, T: Real>(reports: impl IntoIterator<Item = &'a InequalityReport<T>>) -> String {
    let mut w = ::csv::WriterBuilder::new()
        .terminator(::csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in reports {
        w.write_record(csv_record(r)).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
}

/// Reads reports back. The container depth is recovered from `ν₁/√μ₁`
/// (values indistinguishable from 1 read as infinite depth) and the
/// uncertainty bands are rebuilt from `mu1_err`.
pub fn parse_csv(text: &str) -> Result<Vec<InequalityReport<f64>>> {
    let mut rdr = ::csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(text.as_bytes());
    let header = rdr.headers().map_err(|e| Error::Parse(e.to_string()))?.clone();
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        return Err(Error::Parse(format!("unexpected csv header: {header:?}")));
    }
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
        let num = |i: usize| -> Result<f64> {
            rec[i]
                .trim()
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("{}: {e}", CSV_HEADER[i])))
        };
        let flag = |i: usize| -> Result<bool> {
            rec[i]
                .trim()
                .parse::<bool>()
                .map_err(|e| Error::Parse(format!("{}: {e}", CSV_HEADER[i])))
        };
        let (perimeter, area, mu1, mu1_err, nu1) = (num(1)?, num(2)?, num(3)?, num(4)?, num(5)?);
        let ratio = nu1 / mu1.sqrt();
        let depth = if ratio >= 1.0 - 1e-10 {
            DepthSpec::Infinite
        } else {
            DepthSpec::finite(ratio.atanh() / mu1.sqrt())?
        };
        let label = |ok: bool| {
            if ok {
                "applicable".to_string()
            } else {
                "conjectural regime".to_string()
            }
        };
        let (conj_ok, szego_ok) = (flag(18)?, flag(19)?);
        let mut report = build_report(
            rec[0].to_string(),
            perimeter,
            area,
            mu1,
            mu1_err,
            depth,
            [(conj_ok, label(conj_ok)), (szego_ok, label(szego_ok))],
        )?;
        // Keep the stored values rather than recomputed ones.
        report.nu1 = nu1;
        for (k, rec_out) in report.records.iter_mut().enumerate() {
            rec_out.value = num(6 + 3 * k)?;
            rec_out.bound = num(7 + 3 * k)?;
            rec_out.margin = num(8 + 3 * k)?;
        }
        out.push(report);
    }
    Ok(out)
}
