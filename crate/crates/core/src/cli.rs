//! Command-line front end.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::coding::{diarize, phi, type_words};
use crate::diaries::{
    count_diaries, enumerate_diaries, event_log_json, for_each_labeled_diary, sum_over_size,
    sum_over_size_with, validate_diary, EnumOptions, Event,
};
use crate::envelopes::{interesting_levels, tau};
use crate::posets::{load_poset, FinitePoset};
use crate::variants::{
    devlin_enumerate, devlin_validate, tri_degree_lower_bound, tri_enumerate, tri_validate,
    Alphabet, BinaryWord, FiniteGraph,
};
use crate::words::{closure_levels, Word};

/// Exit code for invalid input data (a diary that fails validation, a
/// malformed file, a bound violation).
pub const EXIT_FAILURE: i32 = 1;
/// Exit code for command-line usage errors.
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "poset-diary",
    version,
    about = "Poset-diaries and big Ramsey degrees of finite posets"
)]
struct Cli {
    /// Emit results as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for counting (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a diary file and print its event log.
    Validate {
        file: String,
        #[arg(long, value_enum, default_value_t = Variant::Poset)]
        variant: Variant,
    },
    /// List the diaries of a poset.
    Enumerate {
        #[arg(long)]
        poset: String,
        /// Print every labeled diary (`label<TAB>word` lines).
        #[arg(long)]
        labeled: bool,
        /// Print only the number of diaries.
        #[arg(long)]
        count_only: bool,
    },
    /// Big Ramsey degree of a poset.
    Degree {
        #[arg(long)]
        poset: String,
    },
    /// Number of diaries summed over all posets of a given size.
    Sum {
        #[arg(long)]
        size: usize,
        /// Allow sizes above 4.
        #[arg(long)]
        allow_large: bool,
    },
    /// A labeled diary coding the poset.
    Diarize {
        #[arg(long)]
        poset: String,
    },
    /// Embedding type of a word set.
    Tau { file: String },
    /// The words φ(v) of every vertex.
    Phi {
        #[arg(long)]
        poset: String,
    },
    /// Words of 1-types over the first vertices of a poset.
    Types {
        #[arg(long)]
        poset: String,
        #[arg(long)]
        level: usize,
    },
    /// Triangle-free diaries of a graph, up to a depth.
    Triangle {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        max_levels: usize,
    },
    /// Devlin embedding types with n leaves.
    Devlin {
        #[arg(long)]
        n: usize,
    },
    /// Draw a diary.
    Render {
        file: String,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Variant {
    Poset,
    Devlin,
    Triangle,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Ascii,
    Dot,
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<S: AsRef<str>>(args: &[S], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args.iter().map(|a| a.as_ref())) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_FAILURE
        }
    }
}

fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {path}"))
}

/// A builtin name or the path of a poset file.
fn poset_arg(spec: &str) -> Result<FinitePoset> {
    if Path::new(spec).is_file() {
        let text = read_file(spec)?;
        return load_poset(&text).with_context(|| format!("in {spec}"));
    }
    load_poset(spec).map_err(|e| anyhow!("{e} (and no file named {spec:?})"))
}

fn graph_arg(spec: &str) -> Result<FiniteGraph> {
    if Path::new(spec).is_file() {
        let text = read_file(spec)?;
        return FiniteGraph::parse(&text).with_context(|| format!("in {spec}"));
    }
    FiniteGraph::load(spec).map_err(|e| anyhow!("{e} (and no file named {spec:?})"))
}

fn word_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

/// Reads a word-set file: one word per line, or `label<TAB>word` lines.
fn read_words(path: &str) -> Result<Vec<Word>> {
    let text = read_file(path)?;
    word_lines(&text)
        .enumerate()
        .map(|(i, line)| {
            let word = line.rsplit('\t').next().unwrap_or(line);
            word.parse::<Word>()
                .with_context(|| format!("{path}: entry {}", i + 1))
        })
        .collect()
}

fn read_binary_words(path: &str) -> Result<Vec<BinaryWord>> {
    let text = read_file(path)?;
    word_lines(&text)
        .enumerate()
        .map(|(i, line)| {
            BinaryWord::parse(line).with_context(|| format!("{path}: entry {}", i + 1))
        })
        .collect()
}

fn write_json(out: &mut dyn Write, value: &serde_json::Value) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string(value)?)?;
    Ok(())
}

fn write_diary(out: &mut dyn Write, words: &[Word]) -> Result<()> {
    for w in words {
        writeln!(out, "{w}")?;
    }
    Ok(())
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let opts = EnumOptions {
        threads: cli.threads,
        ..Default::default()
    };
    match &cli.command {
        Command::Validate { file, variant } => validate(cli.json, file, *variant, out),
        Command::Enumerate {
            poset,
            labeled,
            count_only,
        } => {
            let q = poset_arg(poset)?;
            enumerate(cli.json, poset, &q, *labeled, *count_only, &opts, out)
        }
        Command::Degree { poset } => {
            let q = poset_arg(poset)?;
            let start = Instant::now();
            let c = count_diaries(&q, &opts)?;
            let elapsed = start.elapsed().as_millis();
            if cli.json {
                write_json(
                    out,
                    &json!({"labeled": c.labeled, "unlabeled": c.unlabeled, "aut": c.aut, "poset": poset, "elapsed_ms": elapsed}),
                )
            } else {
                writeln!(out, "{}", c.labeled)?;
                writeln!(out, "# unlabeled {} aut {}", c.unlabeled, c.aut)?;
                Ok(())
            }
        }
        Command::Sum { size, allow_large } => {
            let start = Instant::now();
            let total = if *allow_large {
                sum_over_size_with(*size, &opts)?
            } else {
                sum_over_size(*size, &opts)?
            };
            if cli.json {
                write_json(
                    out,
                    &json!({"size": size, "sum": total, "elapsed_ms": start.elapsed().as_millis()}),
                )
            } else {
                writeln!(out, "{total}")?;
                Ok(())
            }
        }
        Command::Diarize { poset } => {
            let q = poset_arg(poset)?;
            let d = diarize(&q)?;
            if cli.json {
                write_json(
                    out,
                    &json!({"poset": poset, "words": d.words, "labeling": d.labeling}),
                )
            } else {
                write!(out, "{}", d.to_text())?;
                Ok(())
            }
        }
        Command::Tau { file } => {
            let words = read_words(file)?;
            let (image, map) = tau(&words);
            if cli.json {
                let levels: Vec<usize> = interesting_levels(&words).into_iter().collect();
                let map: BTreeMap<String, String> = map
                    .iter()
                    .map(|(k, v)| (k.to_string(), v.to_string()))
                    .collect();
                write_json(out, &json!({"levels": levels, "type": image, "map": map}))
            } else {
                for (w, t) in &map {
                    writeln!(out, "{w}\t{t}")?;
                }
                Ok(())
            }
        }
        Command::Phi { poset } => {
            let q = poset_arg(poset)?;
            let words: Vec<Word> = (0..q.len()).map(|v| phi(&q, v)).collect::<Result<_, _>>()?;
            if cli.json {
                write_json(out, &json!({"poset": poset, "phi": words}))
            } else {
                for (v, w) in words.iter().enumerate() {
                    writeln!(out, "{v}\t{w}")?;
                }
                Ok(())
            }
        }
        Command::Types { poset, level } => {
            let q = poset_arg(poset)?;
            let t = type_words(&q, *level)?;
            if cli.json {
                write_json(
                    out,
                    &json!({"poset": poset, "level": level, "words": t.words, "coding_word": t.coding_word}),
                )
            } else {
                write_diary(out, &t.words)?;
                if let Some(c) = t.coding_word {
                    writeln!(out, "# coding word {c}")?;
                }
                Ok(())
            }
        }
        Command::Triangle { graph, max_levels } => {
            let h = graph_arg(graph)?;
            let found = tri_enumerate(&h, *max_levels)?;
            let bound = tri_degree_lower_bound(&h, *max_levels)?;
            let render = |s: &Vec<BinaryWord>| {
                s.iter()
                    .map(|w| w.display(Alphabet::Bits).to_string())
                    .collect::<Vec<_>>()
            };
            if cli.json {
                let diaries: Vec<Vec<String>> = found.iter().map(render).collect();
                write_json(
                    out,
                    &json!({"graph": graph, "max_levels": max_levels, "count": found.len(), "lower_bound": bound, "diaries": diaries}),
                )
            } else {
                for s in &found {
                    writeln!(out, "{}", render(s).join(" "))?;
                }
                writeln!(out, "# {} diaries, degree at least {bound}", found.len())?;
                Ok(())
            }
        }
        Command::Devlin { n } => {
            let types = devlin_enumerate(*n)?;
            let render = |s: &Vec<BinaryWord>| {
                s.iter()
                    .map(|w| w.display(Alphabet::LR).to_string())
                    .collect::<Vec<_>>()
            };
            if cli.json {
                let all: Vec<Vec<String>> = types.iter().map(render).collect();
                write_json(out, &json!({"n": n, "count": types.len(), "types": all}))
            } else {
                for s in &types {
                    writeln!(out, "{}", render(s).join(" "))?;
                }
                writeln!(out, "# {} types", types.len())?;
                Ok(())
            }
        }
        Command::Render { file, format } => {
            let words = read_words(file)?;
            let events =
                validate_diary(&words).with_context(|| format!("{file} is not a diary"))?;
            let text = match format {
                Format::Ascii => render_ascii(&words, &events),
                Format::Dot => render_dot(&words),
            };
            write!(out, "{text}")?;
            Ok(())
        }
    }
}

fn validate(json: bool, file: &str, variant: Variant, out: &mut dyn Write) -> Result<()> {
    match variant {
        Variant::Poset => {
            let words = read_words(file)?;
            let events =
                validate_diary(&words).with_context(|| format!("{file} is not a poset-diary"))?;
            if json {
                writeln!(out, "{}", event_log_json(&events))?;
            } else {
                for (l, e) in events.iter().enumerate() {
                    writeln!(out, "{l}\t{e}")?;
                }
                writeln!(out, "# valid, {} levels", events.len())?;
            }
        }
        Variant::Devlin | Variant::Triangle => {
            let words = read_binary_words(file)?;
            let events: Vec<String> = if variant == Variant::Devlin {
                devlin_validate(&words)
                    .with_context(|| format!("{file} is not a Devlin type"))?
                    .iter()
                    .map(ToString::to_string)
                    .collect()
            } else {
                tri_validate(&words)
                    .with_context(|| format!("{file} is not a triangle-free diary"))?
                    .iter()
                    .map(ToString::to_string)
                    .collect()
            };
            if json {
                let log: Vec<_> = events
                    .iter()
                    .enumerate()
                    .map(|(l, e)| json!({"level": l, "event": e}))
                    .collect();
                write_json(out, &json!(log))?;
            } else {
                for (l, e) in events.iter().enumerate() {
                    writeln!(out, "{l}\t{e}")?;
                }
                writeln!(out, "# valid, {} levels", events.len())?;
            }
        }
    }
    Ok(())
}

fn enumerate(
    json: bool,
    spec: &str,
    q: &FinitePoset,
    labeled: bool,
    count_only: bool,
    opts: &EnumOptions,
    out: &mut dyn Write,
) -> Result<()> {
    if count_only {
        let c = count_diaries(q, opts)?;
        let n = if labeled { c.labeled } else { c.unlabeled };
        return if json {
            write_json(out, &json!({"poset": spec, "labeled": labeled, "count": n}))
        } else {
            writeln!(out, "{n}")?;
            Ok(())
        };
    }
    if labeled {
        // Depth-first order is deterministic, so labeled diaries are streamed.
        let mut first = true;
        if json {
            write!(out, "[")?;
        }
        for_each_labeled_diary(q, opts, |d| {
            let res: Result<()> = (|| {
                if json {
                    let sep = if first { "" } else { "," };
                    write!(
                        out,
                        "{sep}{}",
                        serde_json::to_string(&json!({"words": d.words, "labeling": d.labeling}))?
                    )?;
                } else {
                    if !first {
                        writeln!(out)?;
                    }
                    write!(out, "{}", d.to_text())?;
                }
                Ok(())
            })();
            first = false;
            res.map_err(|e| crate::diaries::DiaryError::Inconsistent(format!("write failed: {e}")))
        })?;
        if json {
            writeln!(out, "]")?;
        }
        return Ok(());
    }
    let diaries = enumerate_diaries(q, opts)?;
    if json {
        let all: Vec<&Vec<Word>> = diaries.iter().collect();
        write_json(
            out,
            &json!({"poset": spec, "count": all.len(), "diaries": all}),
        )
    } else {
        for (i, d) in diaries.iter().enumerate() {
            if i > 0 {
                writeln!(out)?;
            }
            write_diary(out, d)?;
        }
        Ok(())
    }
}

fn event_label(e: &Event) -> String {
    match e {
        Event::Leaf(w) => format!("leaf {w}"),
        Event::Split(w) => format!("split {w}"),
        Event::NewPerp(v, w) => format!("new ⊥ {v} {w}"),
        Event::NewPrec(v, w) => format!("new ≺ {v} {w}"),
    }
}

/// One row per level. Each node is printed in the column of its lex-least
/// member of the diary; members are marked with `*`.
pub fn render_ascii(words: &[Word], events: &[Event]) -> String {
    let mut members: Vec<Word> = words.to_vec();
    members.sort();
    members.dedup();
    let levels = closure_levels(&members);
    let width = members
        .iter()
        .map(|w| w.len().max(1) + 2)
        .max()
        .unwrap_or(3);
    let mut rows = Vec::new();
    for (l, level) in levels.iter().enumerate() {
        let mut row = format!("{l:>3} |");
        for (c, m) in members.iter().enumerate() {
            let cell = if m.len() < l {
                String::new()
            } else {
                let p = m.prefix(l);
                let first = members
                    .iter()
                    .position(|x| x.len() >= l && x.prefix(l) == p)
                    == Some(c);
                if !first {
                    String::new()
                } else if members.contains(&p) {
                    format!("{p}*")
                } else {
                    p.to_string()
                }
            };
            row.push_str(&format!(" {cell:<width$}"));
        }
        let row = row.trim_end().to_string();
        let note = events.get(l).map(event_label).unwrap_or_default();
        debug_assert!(level.iter().all(|w| w.len() == l));
        rows.push(if note.is_empty() {
            row
        } else {
            format!("{row}    {note}")
        });
    }
    rows.join("\n") + "\n"
}

/// The closure as a DOT tree; edges carry the appended letter and members
/// of the diary are drawn as filled double circles.
pub fn render_dot(words: &[Word]) -> String {
    let mut members: Vec<Word> = words.to_vec();
    members.sort();
    members.dedup();
    let id = |w: &Word| {
        format!(
            "\"n{}\"",
            if w.is_empty() {
                String::new()
            } else {
                w.to_string()
            }
        )
    };
    let mut s = String::from("digraph diary {\n  node [shape=circle, fontname=\"monospace\"];\n");
    for level in closure_levels(&members) {
        for w in &level {
            let attrs = if members.contains(w) {
                ", shape=doublecircle, style=filled, fillcolor=\"lightgrey\""
            } else {
                ""
            };
            s.push_str(&format!("  {} [label=\"{}\"{attrs}];\n", id(w), w));
            if !w.is_empty() {
                let parent = w.prefix(w.len() - 1);
                let c = w.letters()[w.len() - 1].as_char();
                s.push_str(&format!(
                    "  {} -> {} [label=\"{c}\"];\n",
                    id(&parent),
                    id(w)
                ));
            }
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::w;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["poset-diary"];
        full.extend_from_slice(args);
        let code = run(&full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_capture(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["degree"]).0, EXIT_USAGE);
        assert_eq!(
            run_capture(&["degree", "--poset", "chain:2", "--bogus"]).0,
            EXIT_USAGE
        );
        assert_eq!(run_capture(&["--help"]).0, 0);
    }

    #[test]
    fn bad_input_exits_1() {
        let (code, _, err) = run_capture(&["degree", "--poset", "zigzag"]);
        assert_eq!(code, EXIT_FAILURE);
        assert!(err.contains("zigzag"));
        let (code, _, err) = run_capture(&["validate", "/nonexistent/diary.txt"]);
        assert_eq!(code, EXIT_FAILURE);
        assert!(err.contains("/nonexistent/diary.txt"));
    }

    #[test]
    fn ascii_rendering() {
        let words = vec![w("XR"), w("RXX")];
        let events = validate_diary(&words).unwrap();
        let text = render_ascii(&words, &events);
        assert_eq!(text.lines().count(), 4);
        assert!(text.contains("split"));
        assert!(text.contains("new ⊥"));
        assert!(text.contains("XR*"));
        let single = render_ascii(&[Word::empty()], &[]);
        assert_eq!(single.lines().count(), 1);
    }
}
