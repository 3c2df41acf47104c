//! Per-slot trace stream.
//!
//! Comma-separated text with a header row. Columns, in order:
//!
//! ```text
//! slot,scheduled,q_1,...,q_N,st_1,...,st_N
//! ```
//!
//! `scheduled` lists the 1-based ids transmitting in the slot separated by
//! `;` (empty when nothing is scheduled). `q_i` is the backlog at the start
//! of the slot, after arrivals, printed in shortest round-trip form; `st_i`
//! is the stage used for the decision.

use std::fmt::Write as _;
use std::io::{self, BufRead, Write};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct TraceRecord {
    pub slot: u64,
    pub scheduled: Vec<usize>,
    pub queues: Vec<f64>,
    pub stages: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Trace {
    pub num_links: usize,
    pub records: Vec<TraceRecord>,
}

pub fn header(n: usize) -> String {
    let mut h = String::from("slot,scheduled");
    for i in 1..=n {
        write!(h, ",q_{i}").unwrap();
    }
    for i in 1..=n {
        write!(h, ",st_{i}").unwrap();
    }
    h
}

impl TraceRecord {
    pub fn to_line(&self) -> String {
        let ids: Vec<String> = self.scheduled.iter().map(usize::to_string).collect();
        let mut line = format!("{},{}", self.slot, ids.join(";"));
        for q in &self.queues {
            write!(line, ",{q}").unwrap();
        }
        for st in &self.stages {
            write!(line, ",{st}").unwrap();
        }
        line
    }
}

impl Trace {
    pub fn write_to<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{}", header(self.num_links))?;
        for r in &self.records {
            writeln!(out, "{}", r.to_line())?;
        }
        Ok(())
    }

    pub fn read_from<R: BufRead>(input: R) -> Result<Self> {
        let mut lines = input.lines();
        let head = lines
            .next()
            .ok_or_else(|| Error::Trace("empty trace".into()))?
            .map_err(|e| Error::Trace(e.to_string()))?;
        let cols = head.split(',').count();
        if cols < 2 || (cols - 2) % 2 != 0 {
            return Err(Error::Trace(format!("bad header `{head}`")));
        }
        let n = (cols - 2) / 2;
        if head != header(n) {
            return Err(Error::Trace(format!("bad header `{head}`")));
        }
        let mut records = Vec::new();
        for (lineno, line) in lines.enumerate() {
            let line = line.map_err(|e| Error::Trace(e.to_string()))?;
            if line.is_empty() {
                continue;
            }
            let bad = |what: &str| Error::Trace(format!("line {}: {what}", lineno + 2));
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != cols {
                return Err(bad("wrong column count"));
            }
            let slot = fields[0].parse().map_err(|_| bad("bad slot"))?;
            let scheduled = if fields[1].is_empty() {
                Vec::new()
            } else {
                fields[1]
                    .split(';')
                    .map(|s| s.parse::<usize>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| bad("bad scheduled ids"))?
            };
            let queues = fields[2..2 + n]
                .iter()
                .map(|s| s.parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad("bad queue value"))?;
            let stages = fields[2 + n..]
                .iter()
                .map(|s| s.parse::<u64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad("bad stage value"))?;
            records.push(TraceRecord {
                slot,
                scheduled,
                queues,
                stages,
            });
        }
        Ok(Self {
            num_links: n,
            records,
        })
    }

    /// Service slots per link recovered from the `scheduled` column.
    pub fn service_log(&self) -> Result<Vec<Vec<u64>>> {
        let mut log = vec![Vec::new(); self.num_links];
        for r in &self.records {
            for &id in &r.scheduled {
                if id == 0 || id > self.num_links {
                    return Err(Error::Trace(format!(
                        "slot {}: link id {id} out of range",
                        r.slot
                    )));
                }
                log[id - 1].push(r.slot);
            }
        }
        Ok(log)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn write_then_read() {
        let trace = Trace {
            num_links: 2,
            records: vec![
                TraceRecord {
                    slot: 1,
                    scheduled: vec![1],
                    queues: vec![0.5, 0.125],
                    stages: vec![2, 4],
                },
                TraceRecord {
                    slot: 2,
                    scheduled: vec![],
                    queues: vec![0.1 + 0.2, 0.0],
                    stages: vec![0, 3],
                },
            ],
        };
        let mut buf = Vec::new();
        trace.write_to(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("slot,scheduled,q_1,q_2,st_1,st_2\n1,1,0.5,0.125,2,4\n"));
        let back = Trace::read_from(&buf[..]).unwrap();
        assert_eq!(back, trace);
        assert_eq!(back.service_log().unwrap(), vec![vec![1], vec![]]);
    }

    #[test]
    fn rejects_malformed_rows() {
        assert!(Trace::read_from(&b""[..]).is_err());
        assert!(Trace::read_from(&b"slot,scheduled,q_1,st_1\n1,1,0.5\n"[..]).is_err());
        assert!(Trace::read_from(&b"slot,scheduled,q_1,st_1\n1,x,0.5,1\n"[..]).is_err());
        let t = Trace::read_from(&b"slot,scheduled,q_1,st_1\n1,2,0.5,1\n"[..]).unwrap();
        assert!(t.service_log().is_err());
    }
}
