//! Command line front end: descriptor parsing, file formats, generators,
//! converters, and DOT exporters wired together.
//!
//! Exit codes: 0 on success, 1 on domain errors (invalid signature,
//! non-integer growth ratio, finite language, ...), 2 on parse and input
//! errors (malformed descriptors or files, unknown flags).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};

use sigtree_core::{
    dfa_to_signature, fibonacci, minimal_labelling, parse_periodic_descriptor,
    periodic_to_substitution, roundtrip_preserves_words, signature_to_dfa, Alphabet, Dfa, Error,
    LabelledSignature, LetterSeq, Morphism, MorphismFile, Signature,
    SubstitutiveLabelledSignature, TreePrefix, Word,
};

#[derive(Parser)]
#[command(name = "sigtree", version, about = "Breadth-first signatures of trees and languages")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a breadth-first tree prefix from a signature.
    GenTree {
        /// Signature descriptor: periodic:u=..;v=.. or morphism:FILE.
        #[arg(long)]
        signature: String,
        /// Stop once at least this many nodes exist.
        #[arg(long)]
        nodes: usize,
        /// Also write a DOT rendering to this path.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Generate the first words of a labelled signature's language.
    #[command(group(ArgGroup::new("label-source").required(true).args(["labelling", "minimal"])))]
    GenLang {
        /// Signature descriptor: periodic:u=..;v=.. or morphism:FILE.
        #[arg(long)]
        signature: String,
        /// Labelling descriptor: periodic letters over --alphabet, or morphism:FILE.
        #[arg(long)]
        labelling: Option<String>,
        /// Use the minimal labelling of the signature.
        #[arg(long)]
        minimal: bool,
        /// Ordered letters for a periodic labelling, comma separated.
        #[arg(long)]
        alphabet: Option<String>,
        /// Number of words to generate.
        #[arg(long)]
        count: usize,
        /// Also write a DOT rendering of the labelled tree to this path.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Check a signature against the prefix-sum validity condition.
    CheckValid {
        /// Signature descriptor: periodic:u=..;v=.. or morphism:FILE.
        #[arg(long)]
        signature: String,
        /// Number of leading entries to scan.
        #[arg(long, default_value_t = 1000)]
        horizon: usize,
    },
    /// Relabel an automaton's transitions with per-state letter ranks.
    Minlabel {
        /// Automaton file.
        file: PathBuf,
        /// Also write a DOT rendering to this path.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Turn a valid eventually periodic signature into a substitution.
    SigFromPeriodic {
        /// Preperiod entries, comma separated.
        #[arg(long)]
        u: Option<String>,
        /// Period entries, comma separated.
        #[arg(long)]
        v: String,
    },
    /// Extract the substitutive labelled signature of an automaton.
    SigFromDfa {
        /// Automaton file.
        file: PathBuf,
    },
    /// Build the automaton of a substitutive labelled signature.
    DfaFromSig {
        /// Morphism file; label images default to per-letter ranks.
        file: PathBuf,
        /// Also write a DOT rendering to this path.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Check that an automaton survives the signature round trip.
    Roundtrip {
        /// Automaton file.
        file: PathBuf,
        /// Number of words to compare.
        #[arg(long, default_value_t = 500)]
        words: usize,
    },
    /// Run the Fibonacci/Zeckendorf pipeline end to end.
    DemoFibonacci,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::GenTree { signature, nodes, dot } => {
            let s = signature_from_descriptor(&signature)?;
            let tree = TreePrefix::generate(&s, nodes)?;
            for (j, degree) in tree.signature_prefix().iter().enumerate() {
                let interval = tree.child_interval(j);
                println!("{j} {degree} {}..{}", interval.start, interval.end);
            }
            if let Some(path) = dot {
                write_file(&path, &tree.to_dot())?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::GenLang { signature, labelling, minimal, alphabet, count, dot } => {
            let s = signature_from_descriptor(&signature)?;
            let lang = if minimal {
                minimal_labelling(&s)?
            } else {
                let descriptor = labelling.expect("required by the flag group");
                let seq = labelling_from_descriptor(&descriptor, alphabet.as_deref())?;
                LabelledSignature::new(s, seq)
            };
            let label_alphabet = lang.labelling().alphabet().clone();
            for word in lang.generate_language(count)? {
                println!("{}", label_alphabet.render_word(&word));
            }
            if let Some(path) = dot {
                write_file(&path, &lang.labelled_tree_dot(count.max(1))?)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckValid { signature, horizon } => {
            let s = signature_from_descriptor(&signature)?;
            let report = s.check_valid(horizon);
            if let Some(index) = report.first_violation {
                println!("invalid at index {index}: prefix sum does not exceed {}", index + 1);
                return Ok(ExitCode::from(1));
            }
            if report.proven_forever {
                println!("valid (proven forever)");
            } else {
                println!("valid on the first {horizon} entries (not proven beyond)");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Minlabel { file, dot } => {
            let d = Dfa::parse(&read_file(&file)?)?;
            let m = d.minimal_label();
            print!("{}", m.render());
            if let Some(path) = dot {
                write_file(&path, &m.to_dot())?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::SigFromPeriodic { u, v } => {
            let u = match u {
                Some(list) => parse_entries(&list)?,
                None => Vec::new(),
            };
            let v = parse_entries(&v)?;
            let (substitution, start) = periodic_to_substitution(&u, &v)?;
            let file = MorphismFile { substitution, start, labels: None };
            print!("{}", file.to_text());
            Ok(ExitCode::SUCCESS)
        }
        Command::SigFromDfa { file } => {
            let d = Dfa::parse(&read_file(&file)?)?;
            let sls = dfa_to_signature(&d)?;
            let file = MorphismFile {
                substitution: sls.substitution().clone(),
                start: sls.start(),
                labels: Some(sls.labels().clone()),
            };
            print!("{}", file.to_text());
            Ok(ExitCode::SUCCESS)
        }
        Command::DfaFromSig { file, dot } => {
            let parsed = MorphismFile::parse(&read_file(&file)?)?;
            let sls = labelled_signature_from_file(parsed)?;
            let d = signature_to_dfa(&sls)?.prune_unused_letters();
            print!("{}", d.render());
            if let Some(path) = dot {
                write_file(&path, &d.to_dot())?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Roundtrip { file, words } => {
            let d = Dfa::parse(&read_file(&file)?)?;
            if roundtrip_preserves_words(&d, words)? {
                println!("round trip preserves the first {words} words");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("round trip changed the word list within the first {words} words");
                Ok(ExitCode::from(1))
            }
        }
        Command::DemoFibonacci => demo_fibonacci(),
    }
}

/// Builds a signature from `periodic:u=..;v=..` or `morphism:FILE`.
fn signature_from_descriptor(descriptor: &str) -> Result<Signature, Error> {
    if let Some(path) = descriptor.strip_prefix("morphism:") {
        let parsed = MorphismFile::parse(&read_file(Path::new(path))?)?;
        return Signature::substitutive(parsed.substitution, parsed.start);
    }
    let (u, v) = parse_periodic_descriptor(descriptor)?;
    Signature::periodic(u, v)
}

/// Builds a labelling sequence from `periodic:u=..;v=..` (letters over the
/// `--alphabet` list) or `morphism:FILE` (the file's label images over its
/// substitution's fixed point; the fixed point itself if it has none).
fn labelling_from_descriptor(
    descriptor: &str,
    alphabet: Option<&str>,
) -> Result<LetterSeq, Error> {
    if let Some(path) = descriptor.strip_prefix("morphism:") {
        let parsed = MorphismFile::parse(&read_file(Path::new(path))?)?;
        return match parsed.labels {
            Some(_) => Ok(labelled_signature_from_file(parsed)?.letter_sequence()),
            None => parsed.substitution.fixed_point(parsed.start),
        };
    }
    let Some(alphabet) = alphabet else {
        return Err(Error::Parse(
            "a periodic labelling needs --alphabet to order its letters".into(),
        ));
    };
    let alphabet = Alphabet::parse_csv(alphabet)?;
    let (u, v) = split_periodic_letters(descriptor, &alphabet)?;
    LetterSeq::periodic(alphabet, u, v)
}

/// The `periodic:u=..;v=..` syntax with letters of `alphabet` as items.
fn split_periodic_letters(descriptor: &str, alphabet: &Alphabet) -> Result<(Word, Word), Error> {
    let Some(body) = descriptor.strip_prefix("periodic:") else {
        return Err(Error::Parse(format!(
            "unknown labelling descriptor '{descriptor}': expected periodic:... or morphism:FILE"
        )));
    };
    let mut u = None;
    let mut v = None;
    for part in body.split(';') {
        let (key, items) = if let Some(items) = part.strip_prefix("u=") {
            (&mut u, items)
        } else if let Some(items) = part.strip_prefix("v=") {
            (&mut v, items)
        } else {
            return Err(Error::Parse(format!("unknown descriptor part '{part}'")));
        };
        if key.is_some() {
            return Err(Error::Parse(format!("duplicate '{}' part", &part[..2])));
        }
        let word: Word = items
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| {
                alphabet
                    .letter(s.trim())
                    .ok_or_else(|| Error::Parse(format!("unknown letter '{}'", s.trim())))
            })
            .collect::<Result<_, _>>()?;
        *key = Some(word);
    }
    let v = v.ok_or_else(|| Error::Parse("a periodic labelling needs a v= part".into()))?;
    Ok((u.unwrap_or_default(), v))
}

/// Promotes a parsed morphism file to a labelled signature, defaulting the
/// label images to per-letter ranks over a digit alphabet when absent.
fn labelled_signature_from_file(
    parsed: MorphismFile,
) -> Result<SubstitutiveLabelledSignature, Error> {
    let MorphismFile { substitution, start, labels } = parsed;
    let labels = match labels {
        Some(labels) => labels,
        None => {
            let domain = substitution.domain().clone();
            let width = domain
                .letters()
                .map(|b| substitution.image(b).len())
                .max()
                .unwrap_or(0);
            let digits = Alphabet::digits(width);
            let images: Vec<Word> = domain
                .letters()
                .map(|b| {
                    (0..substitution.image(b).len())
                        .map(|rank| digits.nth(rank).expect("rank below the widest image"))
                        .collect()
                })
                .collect();
            Morphism::new(domain, digits, images)?
        }
    };
    SubstitutiveLabelledSignature::new(substitution, start, labels)
}

fn parse_entries(list: &str) -> Result<Vec<usize>, Error> {
    list.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("invalid entry '{}'", s.trim())))
        })
        .collect()
}

fn read_file(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, content: &str) -> Result<(), Error> {
    fs::write(path, content).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Greedy arithmetic oracle: the Zeckendorf representation of n, largest
/// Fibonacci number first, with ε for zero.
fn zeckendorf_oracle(count: usize) -> Vec<String> {
    (0..count)
        .map(|n| {
            if n == 0 {
                return "ε".to_string();
            }
            let mut fibs = vec![1usize, 2];
            while *fibs.last().unwrap() <= n {
                fibs.push(fibs[fibs.len() - 1] + fibs[fibs.len() - 2]);
            }
            let mut rem = n;
            let mut digits = String::new();
            for &f in fibs.iter().rev() {
                if digits.is_empty() && f > rem {
                    continue;
                }
                if f <= rem {
                    rem -= f;
                    digits.push('1');
                } else {
                    digits.push('0');
                }
            }
            digits
        })
        .collect()
}

/// Builds the Fibonacci substitution, prints the signature and labelling
/// prefixes and the first eight words, then checks one hundred words
/// against the greedy oracle.
fn demo_fibonacci() -> Result<ExitCode, Error> {
    let fib = fibonacci();
    let signature: Vec<String> = fib.signature().prefix(13).iter().map(usize::to_string).collect();
    println!("signature: {}", signature.concat());
    let lang = fib.labelled_signature();
    let alphabet = lang.labelling().alphabet().clone();
    println!("labelling: {}", alphabet.render_word(&lang.labelling().prefix(13)));
    let words: Vec<String> = lang
        .generate_language(100)?
        .iter()
        .map(|w| alphabet.render_word(w))
        .collect();
    for word in &words[..8] {
        println!("{word}");
    }
    if words == zeckendorf_oracle(100) {
        println!("PASS: 100 words match the greedy oracle");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("FAIL: the word list differs from the greedy oracle");
        Ok(ExitCode::from(1))
    }
}
