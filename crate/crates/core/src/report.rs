//! Result rows and their CSV form.
//!
//! Columns, in order:
//!
//! ```text
//! scenario,policy,sweep,seed,row,satisfaction_ratio,time_avg_mean_queue,
//! max_queue_observed,mean_inter_service_std,max_inter_service_std
//! ```
//!
//! `row` is `run` for a single run and `mean` for the per-configuration
//! aggregate (whose `seed` is empty). Numbers carry 9 significant digits.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const HEADER: [&str; 10] = [
    "scenario",
    "policy",
    "sweep",
    "seed",
    "row",
    "satisfaction_ratio",
    "time_avg_mean_queue",
    "max_queue_observed",
    "mean_inter_service_std",
    "max_inter_service_std",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowKind {
    Run,
    Mean,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub scenario: String,
    pub policy: String,
    pub sweep: u64,
    pub seed: Option<u64>,
    pub kind: RowKind,
    pub satisfaction_ratio: f64,
    pub time_avg_mean_queue: f64,
    pub max_queue_observed: f64,
    pub mean_inter_service_std: f64,
    pub max_inter_service_std: f64,
}

impl ResultRow {
    fn metrics(&self) -> [f64; 5] {
        [
            self.satisfaction_ratio,
            self.time_avg_mean_queue,
            self.max_queue_observed,
            self.mean_inter_service_std,
            self.max_inter_service_std,
        ]
    }

    fn record(&self) -> Vec<String> {
        let mut rec = vec![
            self.scenario.clone(),
            self.policy.clone(),
            self.sweep.to_string(),
            self.seed.map(|s| s.to_string()).unwrap_or_default(),
            match self.kind {
                RowKind::Run => "run".into(),
                RowKind::Mean => "mean".into(),
            },
        ];
        rec.extend(self.metrics().iter().map(|&x| format_number(x)));
        rec
    }
}

/// Formats with 9 significant digits in plain decimal notation when the
/// decimal exponent lies in `-5..9`, scientific otherwise; trailing zeros
/// are dropped.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.8e}");
    let (mantissa, exp) = sci
        .split_once('e')
        .expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    let body = if (-5..9).contains(&exp) {
        let plain = if exp >= 0 {
            let split = exp as usize + 1;
            format!("{}.{}", &digits[..split], &digits[split..])
        } else {
            format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
        };
        trim_fraction(&plain).to_string()
    } else {
        let m = format!("{}.{}", &digits[..1], &digits[1..]);
        format!("{}e{}", trim_fraction(&m), exp)
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn write_csv<W: Write>(rows: &[ResultRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    let io = |e: csv::Error| Error::Results(e.to_string());
    w.write_record(HEADER).map_err(io)?;
    for row in rows {
        w.write_record(row.record()).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Results(e.to_string()))
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<ResultRow>> {
    let mut r = csv::Reader::from_reader(input);
    let headers = r
        .headers()
        .map_err(|e| Error::Results(e.to_string()))?
        .clone();
    if headers.iter().ne(HEADER.iter().copied()) {
        return Err(Error::Results(format!("unexpected header {headers:?}")));
    }
    let mut rows = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| Error::Results(e.to_string()))?;
        let bad = |what: &str| Error::Results(format!("row {}: bad {what}", i + 1));
        let num = |k: usize| rec[k].parse::<f64>().map_err(|_| bad(HEADER[k]));
        rows.push(ResultRow {
            scenario: rec[0].to_string(),
            policy: rec[1].to_string(),
            sweep: rec[2].parse().map_err(|_| bad("sweep"))?,
            seed: if rec[3].is_empty() {
                None
            } else {
                Some(rec[3].parse().map_err(|_| bad("seed"))?)
            },
            kind: match &rec[4] {
                "run" => RowKind::Run,
                "mean" => RowKind::Mean,
                _ => return Err(bad("row kind")),
            },
            satisfaction_ratio: num(5)?,
            time_avg_mean_queue: num(6)?,
            max_queue_observed: num(7)?,
            mean_inter_service_std: num(8)?,
            max_inter_service_std: num(9)?,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(format_number(0.0), "0");
        assert_eq!(format_number(1.0), "1");
        assert_eq!(format_number(0.109375), "0.109375");
        assert_eq!(format_number(1.0 / 3.0), "0.333333333");
        assert_eq!(format_number(-2.0 / 3.0), "-0.666666667");
        assert_eq!(format_number(123456789.4), "123456789");
        assert_eq!(format_number(1234567890.0), "1.23456789e9");
        assert_eq!(format_number(1.5e-7), "1.5e-7");
        assert_eq!(format_number(0.00001234), "0.00001234");
    }

    fn row(x: f64) -> ResultRow {
        ResultRow {
            scenario: "fig2_link_count".into(),
            policy: "msmw".into(),
            sweep: 16,
            seed: Some(3),
            kind: RowKind::Run,
            satisfaction_ratio: x,
            time_avg_mean_queue: x * 7.0,
            max_queue_observed: 3.0,
            mean_inter_service_std: x / 9.0,
            max_inter_service_std: 0.0,
        }
    }

    #[test]
    fn csv_layout() {
        let mut mean = row(0.5);
        mean.seed = None;
        mean.kind = RowKind::Mean;
        let mut buf = Vec::new();
        write_csv(&[row(0.5), mean], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], HEADER.join(","));
        assert_eq!(
            lines[1],
            "fig2_link_count,msmw,16,3,run,0.5,3.5,3,0.0555555556,0"
        );
        assert_eq!(
            lines[2],
            "fig2_link_count,msmw,16,,mean,0.5,3.5,3,0.0555555556,0"
        );
    }

    #[test]
    fn rejects_foreign_csv() {
        assert!(read_csv(&b"a,b\n1,2\n"[..]).is_err());
    }

    proptest! {
        #[test]
        fn parse_recovers_printed_values(x in -1e12f64..1e12) {
            let rows = vec![row(x)];
            let mut buf = Vec::new();
            write_csv(&rows, &mut buf).unwrap();
            let back = read_csv(&buf[..]).unwrap();
            let mut again = Vec::new();
            write_csv(&back, &mut again).unwrap();
            prop_assert_eq!(&buf, &again);
            let rel = (back[0].satisfaction_ratio - x).abs() / x.abs().max(1e-300);
            prop_assert!(rel <= 5e-9);
        }
    }
}
