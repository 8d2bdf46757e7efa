//! Script replay and benchmarking over the dynamic wildcard matchers.
//!
//! Scripts are line based and whitespace separated. Positions are 1-based and
//! symbols are single bytes:
//!
//! ```text
//! SUB T 3 x        substitute text position 3
//! SUB P 1 ?        substitute pattern position 1
//! INS P 2 a        insert into the pattern (mode two)
//! DEL P 2          delete from the pattern (mode two)
//! QUERY            MATCH or NOMATCH
//! COUNT            number of occurrences (mode two)
//! PAIRQUERY l r a b d   pair count over [l, r] (mode rangepair)
//! DUMP             current text and pattern
//! ```
//!
//! Blank lines and lines starting with `//` are skipped.

use std::fmt;
use std::io::{BufRead, Write};
use std::time::Instant;

use clap::ValueEnum;
use dynwild_core::hardness::{self, OvInstance, OvOutcome};
use dynwild_core::{
    GeneralConfig, GeneralMatcher, PatternEdit, RangePair, RangePairConfig, SparseMatcher,
    TwoConfig, TwoMatcher,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    General,
    Two,
    Sparse,
    Rangepair,
    Ov,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Mode::General => "general",
            Mode::Two => "two",
            Mode::Sparse => "sparse",
            Mode::Rangepair => "rangepair",
            Mode::Ov => "ov",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Settings {
    pub mode: Mode,
    pub tau: Option<usize>,
    pub block_size: Option<usize>,
    pub rebuild_threshold: Option<usize>,
    /// Wildcard budget in mode general.
    pub k: Option<usize>,
    pub seed: u64,
}

impl Settings {
    pub fn new(mode: Mode) -> Self {
        Self {
            mode,
            tau: None,
            block_size: None,
            rebuild_threshold: None,
            k: None,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScriptError {
    /// 1-based line number, 0 for setup failures.
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ScriptError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ScriptError {}

fn setup_err(e: impl fmt::Display) -> ScriptError {
    ScriptError {
        line: 0,
        message: e.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub mode: Mode,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub counters: Value,
    pub wall_millis: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Target {
    Text,
    Pattern,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    Sub(Target, usize, u8),
    Ins(usize, u8),
    Del(usize),
    Query,
    Count,
    PairQuery {
        l: usize,
        r: usize,
        a: u8,
        b: u8,
        d: usize,
    },
    Dump,
}

fn parse_pos(tok: Option<&str>) -> Result<usize, String> {
    let tok = tok.ok_or("missing position")?;
    let p: usize = tok.parse().map_err(|_| format!("bad position {tok:?}"))?;
    if p == 0 {
        return Err("positions are 1-based".into());
    }
    Ok(p - 1)
}

fn parse_num(tok: Option<&str>) -> Result<usize, String> {
    let tok = tok.ok_or("missing number")?;
    tok.parse().map_err(|_| format!("bad number {tok:?}"))
}

fn parse_sym(tok: Option<&str>) -> Result<u8, String> {
    let tok = tok.ok_or("missing symbol")?;
    match tok.as_bytes() {
        [c] => Ok(*c),
        _ => Err(format!("symbol must be a single byte, got {tok:?}")),
    }
}

fn parse_target(tok: Option<&str>) -> Result<Target, String> {
    match tok {
        Some("T") => Ok(Target::Text),
        Some("P") => Ok(Target::Pattern),
        Some(t) => Err(format!("target must be T or P, got {t:?}")),
        None => Err("missing target".into()),
    }
}

fn parse_command(line: &str) -> Result<Command, String> {
    let mut toks = line.split_whitespace();
    let verb = toks.next().ok_or("empty command")?;
    let cmd = match verb {
        "SUB" => {
            let target = parse_target(toks.next())?;
            Command::Sub(target, parse_pos(toks.next())?, parse_sym(toks.next())?)
        }
        "INS" | "DEL" => {
            if parse_target(toks.next())? != Target::Pattern {
                return Err(format!("{verb} applies to the pattern only"));
            }
            let pos = parse_pos(toks.next())?;
            if verb == "INS" {
                Command::Ins(pos, parse_sym(toks.next())?)
            } else {
                Command::Del(pos)
            }
        }
        "QUERY" => Command::Query,
        "COUNT" => Command::Count,
        "DUMP" => Command::Dump,
        "PAIRQUERY" => Command::PairQuery {
            l: parse_pos(toks.next())?,
            r: parse_pos(toks.next())?,
            a: parse_sym(toks.next())?,
            b: parse_sym(toks.next())?,
            d: parse_num(toks.next())?,
        },
        other => return Err(format!("unknown verb {other:?}")),
    };
    if let Some(extra) = toks.next() {
        return Err(format!("unexpected argument {extra:?}"));
    }
    Ok(cmd)
}

#[allow(clippy::large_enum_variant)]
enum Engine {
    General(GeneralMatcher),
    Two(TwoMatcher),
    Sparse(SparseMatcher),
    RangePair(RangePair),
}

/// A live matcher driven by script commands.
pub struct Session {
    settings: Settings,
    engine: Engine,
    k: usize,
    started: Instant,
}

fn count_wild(s: &[u8]) -> usize {
    s.iter().filter(|&&c| c == dynwild_core::WILDCARD).count()
}

impl Session {
    pub fn new(settings: Settings, text: &[u8], pattern: &[u8]) -> Result<Self, ScriptError> {
        let started = Instant::now();
        let mut k = 0;
        let engine = match settings.mode {
            Mode::General => {
                k = settings.k.unwrap_or_else(|| {
                    (count_wild(text) + count_wild(pattern)).max(GeneralConfig::default().k)
                });
                let config = GeneralConfig {
                    k,
                    tau: settings.tau,
                    seed: settings.seed,
                    ..GeneralConfig::default()
                };
                Engine::General(GeneralMatcher::new(text, pattern, config).map_err(setup_err)?)
            }
            Mode::Two => {
                k = count_wild(pattern);
                let config = TwoConfig {
                    tau: settings.tau,
                    block_size: settings.block_size,
                    rebuild_threshold: settings.rebuild_threshold,
                    seed: settings.seed,
                    ..TwoConfig::default()
                };
                Engine::Two(TwoMatcher::new(text, pattern, config).map_err(setup_err)?)
            }
            Mode::Sparse => {
                k = count_wild(pattern);
                Engine::Sparse(SparseMatcher::new(text, pattern, settings.seed).map_err(setup_err)?)
            }
            Mode::Rangepair => {
                let mut config = RangePairConfig::for_length(text.len());
                if let Some(b) = settings.block_size {
                    config.block_size = b;
                    config.rebuild_threshold = config.rebuild_threshold.min(b);
                }
                if let Some(d) = settings.rebuild_threshold {
                    config.rebuild_threshold = d;
                }
                let x: Vec<u32> = text.iter().map(|&c| c as u32).collect();
                Engine::RangePair(RangePair::new(&x, 256, config).map_err(setup_err)?)
            }
            Mode::Ov => return Err(setup_err("mode ov reads vectors, not a script")),
        };
        Ok(Self {
            settings,
            engine,
            k,
            started,
        })
    }

    fn exec(&mut self, cmd: Command, out: &mut dyn Write) -> Result<(), String> {
        let mode = self.settings.mode;
        let violation = || format!("command not available in mode {mode}");
        let reply = match (&mut self.engine, cmd) {
            (Engine::General(g), Command::Sub(Target::Text, i, c)) => {
                g.substitute_text(i, c).map(|_| None)
            }
            (Engine::General(g), Command::Sub(Target::Pattern, i, c)) => {
                g.substitute_pattern(i, c).map(|_| None)
            }
            (Engine::General(g), Command::Query) => Ok(Some(verdict(g.query().matched))),
            (Engine::Two(t), Command::Sub(Target::Text, i, c)) => t.update_text(i, c).map(|_| None),
            (Engine::Two(t), Command::Sub(Target::Pattern, i, c)) => {
                t.edit_pattern(PatternEdit::Substitute(i, c)).map(|_| None)
            }
            (Engine::Two(t), Command::Ins(i, c)) => {
                t.edit_pattern(PatternEdit::Insert(i, c)).map(|_| None)
            }
            (Engine::Two(t), Command::Del(i)) => {
                t.edit_pattern(PatternEdit::Delete(i)).map(|_| None)
            }
            (Engine::Two(t), Command::Query) => Ok(Some(verdict(t.query().matched))),
            (Engine::Two(t), Command::Count) => Ok(Some(t.query().count.unwrap_or(0).to_string())),
            (Engine::Sparse(s), Command::Sub(Target::Text, i, c)) => {
                s.update_text(i, c).map(|_| None)
            }
            (Engine::Sparse(s), Command::Sub(Target::Pattern, i, c)) => {
                s.update_pattern(i, c).map(|_| None)
            }
            (Engine::Sparse(s), Command::Query) => Ok(Some(verdict(s.query().matched))),
            (Engine::RangePair(rp), Command::Sub(Target::Text, i, c)) => {
                rp.update(i, c as u32).map(|_| None)
            }
            (Engine::RangePair(rp), Command::PairQuery { l, r, a, b, d }) => rp
                .query(l, r, a as u32, b as u32, d)
                .map(|c| Some(c.to_string())),
            (_, Command::Dump) => Ok(Some(self.dump())),
            _ => return Err(violation()),
        };
        match reply.map_err(|e| e.to_string())? {
            Some(line) => writeln!(out, "{line}").map_err(|e| e.to_string()),
            None => Ok(()),
        }
    }

    fn dump(&self) -> String {
        let show = |s: &[u8]| String::from_utf8_lossy(s).into_owned();
        match &self.engine {
            Engine::General(g) => format!("T={} P={}", show(g.text()), show(g.pattern())),
            Engine::Two(t) => format!("T={} P={}", show(t.text()), show(&t.pattern())),
            Engine::Sparse(s) => format!("T={} P={}", show(s.text()), show(s.pattern())),
            Engine::RangePair(rp) => {
                let x: Vec<u8> = rp.sequence().iter().map(|&c| c as u8).collect();
                format!("X={}", show(&x))
            }
        }
    }

    /// Runs every command of `script`, writing one line per output command.
    pub fn run(&mut self, script: impl BufRead, out: &mut dyn Write) -> Result<(), ScriptError> {
        for (idx, line) in script.lines().enumerate() {
            let fail = |message: String| ScriptError {
                line: idx + 1,
                message,
            };
            let line = line.map_err(|e| fail(e.to_string()))?;
            let line = line.trim();
            if line.is_empty() || line.starts_with("//") {
                continue;
            }
            let cmd = parse_command(line).map_err(fail)?;
            self.exec(cmd, out).map_err(fail)?;
            out.flush().map_err(|e| fail(e.to_string()))?;
        }
        Ok(())
    }

    pub fn report(&self) -> Report {
        let (n, m, counters) = match &self.engine {
            Engine::General(g) => (g.text().len(), g.pattern().len(), to_value(g.counters())),
            Engine::Two(t) => (t.text().len(), t.pattern_len(), to_value(t.counters())),
            Engine::Sparse(s) => (s.text().len(), s.pattern().len(), to_value(s.counters())),
            Engine::RangePair(rp) => (rp.len(), 0, to_value(rp.counters())),
        };
        Report {
            mode: self.settings.mode,
            n,
            m,
            k: self.k,
            counters,
            wall_millis: self.started.elapsed().as_secs_f64() * 1e3,
        }
    }
}

fn verdict(matched: bool) -> String {
    if matched { "MATCH" } else { "NOMATCH" }.to_string()
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("counters serialize")
}

/// Solves every instance in `input`, one `TRUE`/`FALSE` line each. Instances
/// are blocks of 0/1 lines separated by blank lines.
pub fn run_ov(
    settings: Settings,
    input: impl BufRead,
    out: &mut dyn Write,
) -> Result<Report, ScriptError> {
    let started = Instant::now();
    let mut blocks: Vec<(usize, String)> = Vec::new();
    let mut current = String::new();
    let mut first_line = 1;
    for (idx, line) in input.lines().enumerate() {
        let line = line.map_err(|e| ScriptError {
            line: idx + 1,
            message: e.to_string(),
        })?;
        if line.trim().is_empty() {
            if !current.is_empty() {
                blocks.push((first_line, std::mem::take(&mut current)));
            }
            first_line = idx + 2;
        } else {
            current.push_str(&line);
            current.push('\n');
        }
    }
    if !current.is_empty() {
        blocks.push((first_line, current));
    }

    let mut total = OvOutcome::default();
    let (mut n, mut d) = (0, 0);
    for (line, block) in blocks {
        let fail = |e: dynwild_core::Error| ScriptError {
            line,
            message: e.to_string(),
        };
        let inst = OvInstance::parse(&block).map_err(fail)?;
        let outcome = hardness::solve_via_matcher(&inst, settings.seed).map_err(fail)?;
        writeln!(out, "{}", if outcome.answer { "TRUE" } else { "FALSE" }).map_err(setup_err)?;
        total.queries += outcome.queries;
        total.substitutions += outcome.substitutions;
        total.self_only += outcome.self_only;
        total.answer |= outcome.answer;
        n = n.max(inst.len());
        d = d.max(inst.dim());
    }
    Ok(Report {
        mode: Mode::Ov,
        n,
        m: d + 2,
        k: d,
        counters: to_value(&total),
        wall_millis: started.elapsed().as_secs_f64() * 1e3,
    })
}

/// Shape of a generated benchmark stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StreamShape {
    pub n: usize,
    pub m: usize,
    pub sigma: usize,
    pub updates: usize,
    /// Wildcards placed in the initial pattern.
    pub wildcards: usize,
}

/// Replays a seeded random update/query stream and reports the counters.
/// The counter section depends only on `settings` and `shape`.
pub fn bench(settings: Settings, shape: StreamShape) -> Result<Report, ScriptError> {
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let alphabet: Vec<u8> = (b'a'..).take(shape.sigma.clamp(1, 26)).collect();
    let pick = |rng: &mut ChaCha8Rng| alphabet[rng.gen_range(0..alphabet.len())];
    let n = shape.n.max(1);
    let m = shape.m.clamp(1, n);
    let text: Vec<u8> = (0..n).map(|_| pick(&mut rng)).collect();
    let mut pattern: Vec<u8> = (0..m).map(|_| pick(&mut rng)).collect();
    let wild = match settings.mode {
        Mode::Two => m.saturating_sub(2),
        _ => shape.wildcards.min(m),
    };
    for i in rand::seq::index::sample(&mut rng, m, wild) {
        pattern[i] = dynwild_core::WILDCARD;
    }
    if settings.mode == Mode::Ov {
        let d = m;
        let inst = OvInstance::new(
            (0..n)
                .map(|_| (0..d).map(|_| rng.gen_bool(0.5)).collect())
                .collect(),
        )
        .map_err(setup_err)?;
        let started = Instant::now();
        let outcome = hardness::solve_via_matcher(&inst, settings.seed).map_err(setup_err)?;
        return Ok(Report {
            mode: Mode::Ov,
            n,
            m: d + 2,
            k: d,
            counters: to_value(&outcome),
            wall_millis: started.elapsed().as_secs_f64() * 1e3,
        });
    }

    let mut session = Session::new(settings, &text, &pattern)?;
    let mut sink = std::io::sink();
    let solid: Vec<usize> = (0..m)
        .filter(|&i| pattern[i] != dynwild_core::WILDCARD)
        .collect();
    for _ in 0..shape.updates {
        let on_text = settings.mode == Mode::Rangepair || solid.is_empty() || rng.gen_bool(0.8);
        let cmd = if on_text {
            Command::Sub(Target::Text, rng.gen_range(0..n), pick(&mut rng))
        } else {
            Command::Sub(
                Target::Pattern,
                solid[rng.gen_range(0..solid.len())],
                pick(&mut rng),
            )
        };
        session.exec(cmd, &mut sink).map_err(setup_err)?;
        let query = match settings.mode {
            Mode::Rangepair => {
                let l = rng.gen_range(0..n);
                Command::PairQuery {
                    l,
                    r: rng.gen_range(l..n),
                    a: pick(&mut rng),
                    b: pick(&mut rng),
                    d: rng.gen_range(0..n),
                }
            }
            _ => Command::Query,
        };
        session.exec(query, &mut sink).map_err(setup_err)?;
    }
    Ok(session.report())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(
        settings: Settings,
        text: &str,
        pattern: &str,
        script: &str,
    ) -> Result<String, ScriptError> {
        let mut s = Session::new(settings, text.as_bytes(), pattern.as_bytes())?;
        let mut out = Vec::new();
        s.run(script.as_bytes(), &mut out)?;
        Ok(String::from_utf8(out).unwrap())
    }

    #[test]
    fn parses_commands() {
        assert_eq!(
            parse_command("SUB T 3 x"),
            Ok(Command::Sub(Target::Text, 2, b'x'))
        );
        assert_eq!(parse_command("  QUERY "), Ok(Command::Query));
        assert_eq!(
            parse_command("PAIRQUERY 1 4 a b 0"),
            Ok(Command::PairQuery {
                l: 0,
                r: 3,
                a: b'a',
                b: b'b',
                d: 0
            })
        );
        assert!(parse_command("SUB T 0 x").is_err());
        assert!(parse_command("SUB X 1 x").is_err());
        assert!(parse_command("SUB T 1 xy").is_err());
        assert!(parse_command("QUERY now").is_err());
        assert!(parse_command("INS T 1 a").is_err());
        assert!(parse_command("JUMP").is_err());
    }

    #[test]
    fn general_example_script() {
        let s = Settings::new(Mode::General);
        let out = run(
            s,
            "aabbccba",
            "a?b?c",
            "QUERY\nSUB P 1 b\nQUERY\nSUB T 1 b\nQUERY\n",
        )
        .unwrap();
        assert_eq!(out, "MATCH\nNOMATCH\nMATCH\n");
    }

    #[test]
    fn rangepair_script() {
        let out = run(
            Settings::new(Mode::Rangepair),
            "abab",
            "",
            "PAIRQUERY 1 4 a b 0\nSUB T 3 b\nPAIRQUERY 1 4 a b 0\nDUMP\n",
        )
        .unwrap();
        assert_eq!(out, "2\n1\nX=abbb\n");
    }

    #[test]
    fn two_mode_edits() {
        let out = run(
            Settings::new(Mode::Two),
            "abcab",
            "a?",
            "COUNT\nINS P 1 ?\nCOUNT\nDEL P 1\nDEL P 2\nCOUNT\nDUMP\n",
        )
        .unwrap();
        assert_eq!(out, "2\n1\n2\nT=abcab P=a\n");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = run(Settings::new(Mode::General), "abc", "a", "QUERY\n\nFOO\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = run(
            Settings::new(Mode::General),
            "abc",
            "a",
            "QUERY\nINS P 1 a\n",
        )
        .unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("mode general"));
        let e = run(Settings::new(Mode::Sparse), "abc", "a?", "SUB P 2 b\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = run(Settings::new(Mode::General), "abc", "a", "SUB T 9 a\n").unwrap_err();
        assert_eq!(e.line, 1);
    }

    #[test]
    fn ov_blocks() {
        let mut out = Vec::new();
        let r = run_ov(
            Settings::new(Mode::Ov),
            "10\n01\n\n111\n111\n".as_bytes(),
            &mut out,
        )
        .unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "TRUE\nFALSE\n");
        assert_eq!(r.counters["queries"], 4);
        let mut out = Vec::new();
        let e = run_ov(
            Settings::new(Mode::Ov),
            "10\n01\n\n1\n11\n".as_bytes(),
            &mut out,
        )
        .unwrap_err();
        assert_eq!(e.line, 4);
    }

    #[test]
    fn bench_is_deterministic() {
        let shape = StreamShape {
            n: 300,
            m: 6,
            sigma: 3,
            updates: 200,
            wildcards: 2,
        };
        for mode in [
            Mode::General,
            Mode::Two,
            Mode::Sparse,
            Mode::Rangepair,
            Mode::Ov,
        ] {
            let mut s = Settings::new(mode);
            s.seed = 5;
            let a = bench(s, shape).unwrap();
            let b = bench(s, shape).unwrap();
            assert_eq!(a.counters, b.counters, "{mode}");
        }
    }
}
