//! Line-oriented event-log and triples files.
//!
//! Both start with `#`-prefixed `key=value` header lines followed by a
//! `#`-prefixed column line, then one comma-separated record per line:
//!
//! ```text
//! # qeraser event-log v1
//! # seed=7
//! # config_digest=3f2c9a0d1b7e4c55
//! # rng=chacha20/rand_chacha-0.3/seed_from_u64/stream-per-block
//! # mode=double_delayed_choice
//! # coincidence_window_ns=20
//! # pair_spacing_ns=1000
//! # block_size=400
//! # schedule_bits=1011
//! # records=4800
//! # event_id,detector,time_ns,x_bin
//! 0,D0,0,117
//! 1,D2,4,
//! 2,D1',9,
//! ```
//!
//! The `records` count lets readers reject truncated files.

use std::fmt::Write as _;
use std::path::Path as FsPath;

use super::events::{Detector, EventRecord, TimingLayout};
use super::rng::RNG_ALGORITHM;
use super::sample::CoincidenceTriple;
use crate::error::{Error, Result};
use crate::experiment::SwitchSchedule;
use crate::quantum::Mode;

pub const EVENT_LOG_FORMAT: &str = "qeraser event-log v1";
pub const TRIPLES_FORMAT: &str = "qeraser triples v1";
pub const EVENT_COLUMNS: &str = "event_id,detector,time_ns,x_bin";
pub const TRIPLE_COLUMNS: &str = "triple_id,block_index,x_bin,babu,alisha";

/// Provenance carried at the top of every simulated stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimStreamHeader {
    pub seed: u64,
    pub config_digest: String,
    pub rng: String,
    pub mode: Mode,
    pub coincidence_window_ns: u64,
    pub pair_spacing_ns: u64,
    pub block_size: usize,
    pub schedule_bits: String,
}

impl SimStreamHeader {
    pub fn new(
        seed: u64,
        config_digest: impl Into<String>,
        mode: Mode,
        window_ns: u64,
        layout: &TimingLayout,
        schedule: &SwitchSchedule,
    ) -> Self {
        Self {
            seed,
            config_digest: config_digest.into(),
            rng: RNG_ALGORITHM.to_string(),
            mode,
            coincidence_window_ns: window_ns,
            pair_spacing_ns: layout.spacing_ns,
            block_size: schedule.block_size,
            schedule_bits: schedule.bit_string(),
        }
    }

    pub fn layout(&self) -> TimingLayout {
        TimingLayout {
            spacing_ns: self.pair_spacing_ns,
            block_size: self.block_size,
        }
    }

    pub fn schedule(&self) -> Result<SwitchSchedule> {
        SwitchSchedule::new(SwitchSchedule::parse_bit_string(&self.schedule_bits)?, self.block_size)
    }

    fn write(&self, out: &mut String, format: &str, records: usize, columns: &str) {
        let _ = writeln!(out, "# {format}");
        let _ = writeln!(out, "# seed={}", self.seed);
        let _ = writeln!(out, "# config_digest={}", self.config_digest);
        let _ = writeln!(out, "# rng={}", self.rng);
        let _ = writeln!(out, "# mode={}", self.mode.name());
        let _ = writeln!(out, "# coincidence_window_ns={}", self.coincidence_window_ns);
        let _ = writeln!(out, "# pair_spacing_ns={}", self.pair_spacing_ns);
        let _ = writeln!(out, "# block_size={}", self.block_size);
        let _ = writeln!(out, "# schedule_bits={}", self.schedule_bits);
        let _ = writeln!(out, "# records={records}");
        let _ = writeln!(out, "# {columns}");
    }
}

struct Parsed<'a> {
    header: SimStreamHeader,
    records: usize,
    body: Vec<(usize, &'a str)>,
}

fn parse_error(path: &FsPath, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        message: message.into(),
    }
}

fn parse_file<'a>(text: &'a str, path: &FsPath, format: &str, columns: &str) -> Result<Parsed<'a>> {
    let mut keys = std::collections::BTreeMap::new();
    let mut body = Vec::new();
    let mut saw_format = false;
    let mut saw_columns = false;
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        if let Some(rest) = line.strip_prefix('#') {
            let rest = rest.trim();
            if rest == format {
                saw_format = true;
            } else if rest == columns {
                saw_columns = true;
            } else if let Some((k, v)) = rest.split_once('=') {
                keys.insert(k.trim().to_string(), (lineno, v.trim().to_string()));
            } else {
                return Err(parse_error(path, lineno, format!("unrecognised header line {line:?}")));
            }
        } else if !line.is_empty() {
            body.push((lineno, line));
        }
    }
    if !saw_format {
        return Err(parse_error(path, 1, format!("missing format line \"# {format}\"")));
    }
    if !saw_columns {
        return Err(parse_error(path, 1, format!("missing column line \"# {columns}\"")));
    }
    let get = |key: &str| -> Result<&(usize, String)> {
        keys.get(key).ok_or_else(|| parse_error(path, 1, format!("missing header field {key}")))
    };
    fn num<T: std::str::FromStr>(path: &FsPath, entry: &(usize, String), key: &str) -> Result<T> {
        entry
            .1
            .parse()
            .map_err(|_| parse_error(path, entry.0, format!("invalid {key} {:?}", entry.1)))
    }
    let mode_entry = get("mode")?;
    let mode = match mode_entry.1.as_str() {
        "single_delayed_choice" => Mode::SingleDelayedChoice,
        "double_delayed_choice" => Mode::DoubleDelayedChoice,
        other => return Err(parse_error(path, mode_entry.0, format!("unknown mode {other:?}"))),
    };
    let header = SimStreamHeader {
        seed: num(path, get("seed")?, "seed")?,
        config_digest: get("config_digest")?.1.clone(),
        rng: get("rng")?.1.clone(),
        mode,
        coincidence_window_ns: num(path, get("coincidence_window_ns")?, "coincidence_window_ns")?,
        pair_spacing_ns: num(path, get("pair_spacing_ns")?, "pair_spacing_ns")?,
        block_size: num(path, get("block_size")?, "block_size")?,
        schedule_bits: get("schedule_bits")?.1.clone(),
    };
    let records: usize = num(path, get("records")?, "records")?;
    if body.len() != records {
        return Err(Error::Truncated {
            path: path.to_path_buf(),
            expected: records,
            found: body.len(),
        });
    }
    Ok(Parsed { header, records, body })
}

fn read_text(path: &FsPath) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(format!("reading {}", path.display()), e))
}

fn write_text(path: &FsPath, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::io(format!("writing {}", path.display()), e))
}

#[derive(Debug, Clone, PartialEq)]
pub struct EventLog {
    pub header: SimStreamHeader,
    pub records: Vec<EventRecord>,
}

impl EventLog {
    pub fn render(&self) -> String {
        let mut out = String::with_capacity(64 * (self.records.len() + 12));
        self.header.write(&mut out, EVENT_LOG_FORMAT, self.records.len(), EVENT_COLUMNS);
        for r in &self.records {
            let _ = write!(out, "{},{},{},", r.event_id, r.detector, r.time_ns);
            if let Some(b) = r.x_bin {
                let _ = write!(out, "{b}");
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str, path: &FsPath) -> Result<Self> {
        let parsed = parse_file(text, path, EVENT_LOG_FORMAT, EVENT_COLUMNS)?;
        let mut records = Vec::with_capacity(parsed.records);
        for (lineno, line) in parsed.body {
            let bad = |what: &str| parse_error(path, lineno, format!("{what} in {line:?}"));
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 4 {
                return Err(bad("expected 4 fields"));
            }
            let detector = Detector::parse(fields[1]).ok_or_else(|| bad("unknown detector"))?;
            let x_bin = match (detector, fields[3]) {
                (Detector::D0, b) => Some(b.parse().map_err(|_| bad("D0 record needs a bin"))?),
                (_, "") => None,
                _ => return Err(bad("only D0 records carry a bin")),
            };
            records.push(EventRecord {
                event_id: fields[0].parse().map_err(|_| bad("invalid event_id"))?,
                detector,
                time_ns: fields[2].parse().map_err(|_| bad("invalid time_ns"))?,
                x_bin,
            });
        }
        Ok(Self {
            header: parsed.header,
            records,
        })
    }

    pub fn write_to(&self, path: &FsPath) -> Result<()> {
        write_text(path, &self.render())
    }

    pub fn read_from(path: &FsPath) -> Result<Self> {
        Self::parse(&read_text(path)?, path)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TriplesFile {
    pub header: SimStreamHeader,
    pub triples: Vec<CoincidenceTriple>,
}

impl TriplesFile {
    pub fn render(&self) -> String {
        let mut out = String::with_capacity(32 * (self.triples.len() + 12));
        self.header.write(&mut out, TRIPLES_FORMAT, self.triples.len(), TRIPLE_COLUMNS);
        for t in &self.triples {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                t.triple_id,
                t.block_index,
                t.x_bin,
                t.babu.label(),
                t.alisha.map_or("", |k| k.primed_label())
            );
        }
        out
    }

    pub fn parse(text: &str, path: &FsPath) -> Result<Self> {
        let parsed = parse_file(text, path, TRIPLES_FORMAT, TRIPLE_COLUMNS)?;
        let mode = parsed.header.mode;
        let mut triples = Vec::with_capacity(parsed.records);
        for (lineno, line) in parsed.body {
            let bad = |what: &str| parse_error(path, lineno, format!("{what} in {line:?}"));
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 5 {
                return Err(bad("expected 5 fields"));
            }
            let babu = match Detector::parse(fields[3]) {
                Some(Detector::Babu(o)) => o,
                _ => return Err(bad("invalid Babu outcome")),
            };
            let alisha = match (mode, fields[4]) {
                (Mode::SingleDelayedChoice, "") => None,
                (Mode::DoubleDelayedChoice, label) => match Detector::parse(label) {
                    Some(Detector::Alisha(o)) => Some(o),
                    _ => return Err(bad("invalid Alisha outcome")),
                },
                _ => return Err(bad("single-mode triple with an Alisha outcome")),
            };
            triples.push(CoincidenceTriple {
                triple_id: fields[0].parse().map_err(|_| bad("invalid triple_id"))?,
                block_index: fields[1].parse().map_err(|_| bad("invalid block_index"))?,
                x_bin: fields[2].parse().map_err(|_| bad("invalid x_bin"))?,
                babu,
                alisha,
            });
        }
        Ok(Self {
            header: parsed.header,
            triples,
        })
    }

    pub fn write_to(&self, path: &FsPath) -> Result<()> {
        write_text(path, &self.render())
    }

    pub fn read_from(path: &FsPath) -> Result<Self> {
        Self::parse(&read_text(path)?, path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::ArmOutcome;
    use crate::sim::events::emit_events;
    use proptest::prelude::*;

    fn header(mode: Mode) -> SimStreamHeader {
        let schedule = SwitchSchedule::new(vec![1, 0], 3).unwrap();
        SimStreamHeader::new(11, "00ff00ff00ff00ff", mode, 20, &TimingLayout::new(1.0, 3), &schedule)
    }

    fn arb_triple() -> impl Strategy<Value = CoincidenceTriple> {
        (0u64..1_000, 0usize..50, 0usize..512, 0usize..4, prop::option::of(0usize..4)).prop_map(|(id, b, x, j, k)| {
            CoincidenceTriple {
                triple_id: id,
                block_index: b,
                x_bin: x,
                babu: ArmOutcome::ALL[j],
                alisha: k.map(|k| ArmOutcome::ALL[k]),
            }
        })
    }

    proptest! {
        #[test]
        fn triples_render_parse(ts in prop::collection::vec(arb_triple(), 0..40)) {
            let mode = Mode::DoubleDelayedChoice;
            let ts: Vec<_> = ts.into_iter().map(|mut t| { t.alisha.get_or_insert(ArmOutcome::D1); t }).collect();
            let file = TriplesFile { header: header(mode), triples: ts };
            let text = file.render();
            prop_assert_eq!(TriplesFile::parse(&text, FsPath::new("t.csv")).unwrap(), file);
        }
    }

    #[test]
    fn event_log_round_trip() {
        let ts: Vec<_> = (0..6)
            .map(|i| CoincidenceTriple {
                triple_id: i,
                block_index: (i / 3) as usize,
                x_bin: i as usize * 5,
                babu: ArmOutcome::ALL[i as usize % 4],
                alisha: Some(ArmOutcome::ALL[(i as usize + 1) % 4]),
            })
            .collect();
        let h = header(Mode::DoubleDelayedChoice);
        let log = EventLog {
            records: emit_events(&ts, &h.layout(), 3),
            header: h,
        };
        let text = log.render();
        assert!(text.starts_with("# qeraser event-log v1\n# seed=11\n"));
        assert!(text.contains("\n# event_id,detector,time_ns,x_bin\n0,D0,0,0\n"));
        assert_eq!(EventLog::parse(&text, FsPath::new("e.csv")).unwrap(), log);
    }

    #[test]
    fn truncated_file_rejected() {
        let file = TriplesFile {
            header: header(Mode::SingleDelayedChoice),
            triples: (0..5)
                .map(|i| CoincidenceTriple {
                    triple_id: i,
                    block_index: 0,
                    x_bin: 1,
                    babu: ArmOutcome::D2,
                    alisha: None,
                })
                .collect(),
        };
        let text = file.render();
        let cut: String = text.lines().take(text.lines().count() - 2).map(|l| format!("{l}\n")).collect();
        assert!(matches!(
            TriplesFile::parse(&cut, FsPath::new("t.csv")),
            Err(Error::Truncated { expected: 5, found: 3, .. })
        ));
    }

    #[test]
    fn bad_record_reports_line() {
        let file = TriplesFile {
            header: header(Mode::DoubleDelayedChoice),
            triples: vec![],
        };
        let text = file.render().replace("# records=0", "# records=1") + "0,0,1,D9,D1'\n";
        match TriplesFile::parse(&text, FsPath::new("t.csv")) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 12),
            other => panic!("unexpected {other:?}"),
        }
    }
}
