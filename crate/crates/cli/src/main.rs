use std::fs;
use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use hindi_pls::eval::{self, evaluate};
use hindi_pls::pls::{self, PlsDocument, PlsLexeme};
use hindi_pls::{Compiled, Compiler, ExceptionLexicon, Inventory, Source, Variety};

#[derive(Parser, Debug)]
#[command(name = "hindi-pls", version, about = "Hindi pronunciation lexicon compiler")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Convert Devanagari words to phoneme and prosodic-structure strings.
    ///
    /// Words come from the arguments, from --file, or from standard input
    /// (whitespace- or danda-separated).
    Convert {
        words: Vec<String>,

        #[arg(long)]
        file: Option<PathBuf>,

        #[arg(long, default_value = "sch")]
        variety: Variety,

        #[arg(long, default_value = "both")]
        mode: Mode,

        #[command(flatten)]
        common: Common,
    },
    /// Score the compiler against a gold TSV file.
    Eval {
        gold: PathBuf,

        /// Exit with status 1 if any category scores below this percentage.
        #[arg(long)]
        min_accuracy: Option<f64>,

        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Exceptions lexicon (TSV). Defaults to the bundled starter file.
    #[arg(long, conflicts_with = "no_exceptions")]
    exceptions: Option<PathBuf>,

    /// Run the rule cascade alone.
    #[arg(long)]
    no_exceptions: bool,

    /// Akshara-to-IPA inventory (TSV). Defaults to the bundled table.
    #[arg(long)]
    inventory: Option<PathBuf>,

    /// Write results here instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Phoneme,
    Ps,
    Both,
    PlsXml,
    Trace,
}

impl Common {
    fn compiler(&self) -> Result<Compiler> {
        let inventory = match &self.inventory {
            Some(p) => Inventory::from_path(p).with_context(|| format!("loading inventory {}", p.display()))?,
            None => Inventory::default(),
        };
        let exceptions = match (&self.exceptions, self.no_exceptions) {
            (_, true) => ExceptionLexicon::default(),
            (Some(p), false) => {
                ExceptionLexicon::load(p).with_context(|| format!("loading exceptions {}", p.display()))?
            }
            (None, false) => ExceptionLexicon::starter(),
        };
        Ok(Compiler::new(inventory, exceptions))
    }

    fn sink(&self) -> Result<Box<dyn Write>> {
        Ok(match &self.output {
            Some(p) => Box::new(io::BufWriter::new(
                fs::File::create(p).with_context(|| format!("creating {}", p.display()))?,
            )),
            None => Box::new(io::BufWriter::new(io::stdout().lock())),
        })
    }
}

fn split_words(text: &str) -> impl Iterator<Item = &str> {
    text.split(|c: char| c.is_whitespace() || c == '।' || c == '॥').filter(|w| !w.is_empty())
}

fn gather_words(args: &[String], file: Option<&PathBuf>) -> Result<Vec<String>> {
    let mut words: Vec<String> = args.iter().flat_map(|a| split_words(a)).map(String::from).collect();
    if let Some(p) = file {
        let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
        words.extend(split_words(&text).map(String::from));
    }
    if args.is_empty() && file.is_none() {
        for line in io::stdin().lock().lines() {
            words.extend(split_words(&line?).map(String::from));
        }
    }
    Ok(words)
}

fn write_one(out: &mut dyn Write, mode: Mode, c: &Compiled) -> io::Result<()> {
    match mode {
        Mode::Phoneme => writeln!(out, "{}\t{}", c.grapheme, c.phoneme),
        Mode::Ps => writeln!(out, "{}\t{}", c.grapheme, c.ps),
        Mode::Both => writeln!(out, "{}\t{}\t{}", c.grapheme, c.phoneme, c.ps),
        Mode::Trace => {
            writeln!(out, "{} ({})", c.grapheme, c.variety)?;
            match (&c.trace, c.source) {
                (Some(t), _) => write!(out, "{t}")?,
                (None, Source::Exception(cat)) => {
                    writeln!(out, "exceptions lexicon ({cat}) → [{}] {}", c.phoneme, c.ps)?
                }
                (None, Source::Rules) => {}
            }
            writeln!(out)
        }
        Mode::PlsXml => Ok(()),
    }
}

fn convert(words: &[String], file: Option<&PathBuf>, variety: Variety, mode: Mode, common: &Common) -> Result<ExitCode> {
    let compiler = common.compiler()?;
    let words = gather_words(words, file)?;
    let mut out = common.sink()?;
    let mut failed = 0usize;
    let mut lexemes = Vec::new();
    for w in &words {
        match compiler.compile(w, variety) {
            Ok(c) => {
                if mode == Mode::PlsXml {
                    lexemes.push(PlsLexeme::from(&c));
                } else {
                    write_one(&mut out, mode, &c)?;
                }
            }
            Err(e) => {
                failed += 1;
                eprintln!("error: {w}: {e}");
            }
        }
    }
    if mode == Mode::PlsXml {
        out.write_all(pls::emit(&PlsDocument::with_lexemes(lexemes)).as_bytes())?;
    }
    out.flush()?;
    Ok(if failed > 0 { ExitCode::FAILURE } else { ExitCode::SUCCESS })
}

fn run_eval(gold: &PathBuf, min_accuracy: Option<f64>, common: &Common) -> Result<ExitCode> {
    let compiler = common.compiler()?;
    let records = eval::load_gold(gold)?;
    let r = evaluate(&records, |w, v| compiler.compile(w, v));
    print!("{}", eval::report(&r));
    if r.excluded > 0 {
        println!("({} exception-lexicon words excluded)", r.excluded);
    }
    for m in &r.misses {
        let cats: Vec<String> = m.categories.iter().map(|c| c.to_string()).collect();
        match &m.got {
            Ok((ph, ps)) => eprintln!("miss: {} ({}) [{}] got {ph} {ps}", m.grapheme, m.variety, cats.join(",")),
            Err(e) => eprintln!("miss: {} ({}) [{}] error: {e}", m.grapheme, m.variety, cats.join(",")),
        }
    }
    if let Some(p) = &common.output {
        fs::write(p, r.to_key_value()).with_context(|| format!("writing {}", p.display()))?;
    }
    let below = match (min_accuracy, r.min_accuracy()) {
        (Some(min), Some(acc)) => acc.as_f64() < min,
        _ => false,
    };
    Ok(if below { ExitCode::FAILURE } else { ExitCode::SUCCESS })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Convert { words, file, variety, mode, common } => convert(words, file.as_ref(), *variety, *mode, common),
        Command::Eval { gold, min_accuracy, common } => run_eval(gold, *min_accuracy, common),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dandas_and_whitespace_separate_words() {
        let got: Vec<&str> = split_words("राम आया। सीता\tगई॥\n").collect();
        assert_eq!(got, ["राम", "आया", "सीता", "गई"]);
        assert_eq!(split_words("  । ").count(), 0);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
