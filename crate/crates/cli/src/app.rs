//! Subcommand definitions and dispatch.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use cyceq_core::{
    brute_force_equalize, default_insertion_alphabet, equalize, verify_certificate, Alphabet,
    EqualizationError, Letter, OracleError, SearchBudget, Verdict, Word, DEFAULT_NODE_LIMIT,
};

use crate::document::CertificateDocument;
use crate::syntax::{parse_word, tokenize, WordSyntax};
use crate::tables::render_construction;

#[derive(Parser, Debug)]
#[command(
    name = "cyceq",
    version,
    about = "Decide whether two words can be made cyclic shifts of each other by inserting \
             the same letters at the same positions, construct certificates, and verify them."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Clone, Copy, Debug, Default)]
pub struct SyntaxFlags {
    /// Treat each character (extended grapheme) as one letter.
    #[arg(long)]
    pub chars: bool,
    /// Treat whitespace- or comma-separated tokens as letters (default).
    #[arg(long, conflicts_with = "chars")]
    pub tokens: bool,
}

impl SyntaxFlags {
    fn syntax(self) -> WordSyntax {
        if self.chars {
            WordSyntax::Chars
        } else {
            WordSyntax::Tokens
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print both Parikh vectors and decide equalizability: YES iff equal.
    Check {
        u: String,
        v: String,
        #[command(flatten)]
        syntax: SyntaxFlags,
    },
    /// Construct an equalization certificate for two Abelian-equivalent
    /// words of equal length.
    Equalize {
        u: String,
        v: String,
        #[command(flatten)]
        syntax: SyntaxFlags,
        /// Write the certificate document to this path instead of stdout.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        /// Render the block and group views of the construction.
        #[arg(long)]
        tables: bool,
        /// Marker appended to distinguished positions in tables.
        #[arg(long, default_value = "*", value_name = "STR")]
        marker: String,
    },
    /// Re-check a certificate document from scratch.
    Verify {
        /// Path of a document produced by `equalize --json` or `oracle`.
        document: PathBuf,
    },
    /// Exhaustively search for a minimal insertion within a budget.
    Oracle {
        u: String,
        v: String,
        #[command(flatten)]
        syntax: SyntaxFlags,
        /// Maximum total number of inserted letters.
        #[arg(long = "max-insert", value_name = "K", default_value_t = 2)]
        max_insert: usize,
        /// Letters allowed for insertion (default: the letters of u and v).
        #[arg(long, value_name = "LIST")]
        alphabet: Option<String>,
        /// Refuse searches that would enumerate more candidates than this.
        #[arg(long = "node-limit", value_name = "N", default_value_t = DEFAULT_NODE_LIMIT)]
        node_limit: u64,
    },
}

/// Runs the CLI; returns the process exit code (0 positive, 1 negative,
/// 2 usage or malformed input).
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(error) => {
            let code = i32::from(error.use_stderr());
            let _ = error.print();
            return if code == 0 { 0 } else { 2 };
        }
    };
    match cli.command {
        Command::Check { u, v, syntax } => cmd_check(&u, &v, syntax.syntax()),
        Command::Equalize {
            u,
            v,
            syntax,
            json,
            tables,
            marker,
        } => cmd_equalize(&u, &v, syntax.syntax(), json.as_deref(), tables, &marker),
        Command::Verify { document } => cmd_verify(&document),
        Command::Oracle {
            u,
            v,
            syntax,
            max_insert,
            alphabet,
            node_limit,
        } => cmd_oracle(
            &u,
            &v,
            syntax.syntax(),
            max_insert,
            alphabet.as_deref(),
            node_limit,
        ),
    }
}

fn parse_pair(
    alphabet: &mut Alphabet,
    u_text: &str,
    v_text: &str,
    syntax: WordSyntax,
) -> Result<(Word, Word), i32> {
    let u = parse_word(alphabet, u_text, syntax).map_err(|error| {
        eprintln!("error: first word: {error}");
        2
    })?;
    let v = parse_word(alphabet, v_text, syntax).map_err(|error| {
        eprintln!("error: second word: {error}");
        2
    })?;
    Ok((u, v))
}

fn format_parikh(alphabet: &Alphabet, word: &Word) -> String {
    let parikh = word.parikh();
    let entries: Vec<String> = parikh
        .counts()
        .iter()
        .map(|(&letter, &count)| format!("{}={count}", alphabet.token(letter).unwrap_or("?")))
        .collect();
    if entries.is_empty() {
        "(empty)".to_string()
    } else {
        entries.join(" ")
    }
}

fn cmd_check(u_text: &str, v_text: &str, syntax: WordSyntax) -> i32 {
    let mut alphabet = Alphabet::new();
    let (u, v) = match parse_pair(&mut alphabet, u_text, v_text, syntax) {
        Ok(pair) => pair,
        Err(code) => return code,
    };
    println!("Psi(u): {}", format_parikh(&alphabet, &u));
    println!("Psi(v): {}", format_parikh(&alphabet, &v));
    if u.abelian_equivalent(&v) {
        println!("YES");
        0
    } else {
        println!("NO");
        1
    }
}

fn cmd_equalize(
    u_text: &str,
    v_text: &str,
    syntax: WordSyntax,
    json: Option<&std::path::Path>,
    tables: bool,
    marker: &str,
) -> i32 {
    let mut alphabet = Alphabet::new();
    let (u, v) = match parse_pair(&mut alphabet, u_text, v_text, syntax) {
        Ok(pair) => pair,
        Err(code) => return code,
    };
    if u.len() != v.len() {
        eprintln!(
            "error: words must have equal length ({} vs {})",
            u.len(),
            v.len()
        );
        return 2;
    }
    let equalization = match equalize(&u, &v) {
        Ok(equalization) => equalization,
        Err(EqualizationError::ParikhMismatch { letter }) => {
            println!(
                "NO: Parikh vectors differ at letter {}",
                alphabet.token(letter).unwrap_or("?")
            );
            return 1;
        }
        Err(error) => {
            eprintln!("error: {error}");
            return 2;
        }
    };

    if tables {
        print!("{}", render_construction(&alphabet, &equalization, marker));
    }
    let document = CertificateDocument::from_equalization(&alphabet, &equalization);
    match json {
        Some(path) => {
            if let Err(error) = fs::write(path, document.to_text()) {
                eprintln!("error: cannot write {}: {error}", path.display());
                return 2;
            }
            println!("expanded length: {}", document.expanded_length);
            println!("offset: {}", document.offset);
            println!("certificate written to {}", path.display());
        }
        None => print!("{}", document.to_text()),
    }
    0
}

fn cmd_verify(path: &std::path::Path) -> i32 {
    let text = match fs::read_to_string(path) {
        Ok(text) => text,
        Err(error) => {
            eprintln!("error: cannot read {}: {error}", path.display());
            return 2;
        }
    };
    let document = match CertificateDocument::parse(&text) {
        Ok(document) => document,
        Err(error) => {
            eprintln!("malformed document: {error}");
            return 2;
        }
    };
    let (certificate, _alphabet) = match document.to_certificate() {
        Ok(rebuilt) => rebuilt,
        Err(error) => {
            eprintln!("malformed document: {error}");
            return 2;
        }
    };
    match verify_certificate(&certificate) {
        Verdict::Valid => {
            println!("valid");
            0
        }
        Verdict::Invalid(fault) => {
            println!("invalid: {fault}");
            1
        }
    }
}

fn cmd_oracle(
    u_text: &str,
    v_text: &str,
    syntax: WordSyntax,
    max_insert: usize,
    alphabet_list: Option<&str>,
    node_limit: u64,
) -> i32 {
    let mut alphabet = Alphabet::new();
    let (u, v) = match parse_pair(&mut alphabet, u_text, v_text, syntax) {
        Ok(pair) => pair,
        Err(code) => return code,
    };
    let letters: Vec<Letter> = match alphabet_list {
        Some(list) => {
            let tokens = match tokenize(list, syntax) {
                Ok(tokens) => tokens,
                Err(error) => {
                    eprintln!("error: insertion alphabet: {error}");
                    return 2;
                }
            };
            let mut letters = Vec::with_capacity(tokens.len());
            for token in &tokens {
                match alphabet.intern(token) {
                    Ok(letter) => letters.push(letter),
                    Err(error) => {
                        eprintln!("error: insertion alphabet: {error}");
                        return 2;
                    }
                }
            }
            letters
        }
        None => default_insertion_alphabet(&u, &v),
    };
    let budget = match SearchBudget::new(max_insert, letters) {
        Ok(budget) => budget.with_node_limit(node_limit),
        Err(error) => {
            eprintln!("error: {error}");
            return 2;
        }
    };
    match brute_force_equalize(&u, &v, &budget) {
        Ok(result) => match result.witness {
            Some(witness) => {
                println!(
                    "found: minimal total insertion length {}",
                    witness.inserted_count
                );
                let document =
                    CertificateDocument::from_certificate(&alphabet, &witness.certificate, None);
                print!("{}", document.to_text());
                0
            }
            None => {
                println!(
                    "not found: no insertion of at most {} letters over the given alphabet works",
                    budget.max_inserted()
                );
                1
            }
        },
        Err(error @ (OracleError::BudgetInfeasible { .. } | OracleError::SweepInfeasible { .. })) => {
            eprintln!("infeasible: {error}");
            2
        }
        Err(error) => {
            eprintln!("error: {error}");
            2
        }
    }
}
