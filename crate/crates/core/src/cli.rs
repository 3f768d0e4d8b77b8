//! The `aitxt` command line.
//!
//! Exit codes: 0 success (a query answer of any kind is success), 1 parse
//! errors, 2 validation errors, 3 I/O or transport failure, 64 usage error.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::diagnostic::{Diagnostic, Mode};
use crate::fetch::{fetch, FetchOutcome, Origin};
use crate::model::{action_from_string, LanguageTag, PolicyFile, Rule};
use crate::parser::parse;
use crate::policy::{evaluate, DecisionKind, Query};
use crate::promptgen::{render_prompt, PromptRequest};
use crate::validator::validate;
use crate::xmlgen::compile_xml;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "aitxt",
    version,
    about = "Parse, validate, compile and query ai.txt files"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Clone, Copy)]
struct ModeArgs {
    /// Unknown actions and unsupported selectors are errors (default)
    #[arg(long, conflicts_with = "lenient")]
    strict: bool,
    /// Unknown actions and unsupported selectors are warnings
    #[arg(long)]
    lenient: bool,
}

impl ModeArgs {
    fn mode(self) -> Mode {
        if self.lenient {
            Mode::Lenient
        } else {
            Mode::Strict
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a summary of the parsed document
    Parse {
        /// File to read, or `-` for standard input
        file: String,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Report parse and validation diagnostics
    Validate {
        file: String,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Compile to XML
    Compile {
        file: String,
        /// Write the XML here instead of standard output
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Decide whether an agent may perform an action on an element
    Query {
        file: String,
        #[arg(long)]
        agent: String,
        #[arg(long)]
        path: String,
        #[arg(long)]
        element: String,
        #[arg(long)]
        action: String,
        /// Print the decision as JSON
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Render an agent's rules as prompt text
    Prompt {
        file: String,
        #[arg(long)]
        agent: String,
        /// Preferred guideline language, e.g. en-US
        #[arg(long)]
        lang: String,
        /// Do not substitute guidelines written in other languages
        #[arg(long)]
        no_fallback: bool,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Download <ORIGIN>/ai.txt
    Fetch {
        /// e.g. https://example.com
        origin: String,
        #[arg(long, conflicts_with = "validate")]
        compile: bool,
        #[arg(long)]
        validate: bool,
        #[command(flatten)]
        mode: ModeArgs,
    },
}

struct Failure {
    code: i32,
    message: String,
}

fn fail(code: i32, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

type Outcome = Result<(), Failure>;

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn write_out(&mut self, text: &str) -> Outcome {
        self.out
            .write_all(text.as_bytes())
            .and_then(|_| self.out.flush())
            .map_err(|e| fail(EXIT_IO, format!("cannot write output: {e}")))
    }

    fn diagnostics(&mut self, name: &str, diagnostics: &[Diagnostic], to_stdout: bool) {
        for d in diagnostics {
            let line = format!("{}\n", d.render(name));
            let sink: &mut dyn Write = if to_stdout { self.out } else { self.err };
            let _ = sink.write_all(line.as_bytes());
        }
    }
}

fn read_source(file: &str) -> Result<(String, String), Failure> {
    if file == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| fail(EXIT_IO, format!("cannot read standard input: {e}")))?;
        Ok((text, "<stdin>".into()))
    } else {
        let text = std::fs::read_to_string(file)
            .map_err(|e| fail(EXIT_IO, format!("cannot read `{file}`: {e}")))?;
        Ok((text, file.to_string()))
    }
}

/// Parses and, when asked, validates. Diagnostics go to stdout for the
/// `validate` flavor and to stderr otherwise.
fn load(
    io: &mut Io<'_>,
    text: &str,
    name: &str,
    mode: Mode,
    run_validation: bool,
    report_on_stdout: bool,
) -> Result<PolicyFile, Failure> {
    let parsed = parse(text, name, mode);
    io.diagnostics(name, &parsed.diagnostics, report_on_stdout);
    let Some(policy) = parsed.policy else {
        let count = parsed.errors().count();
        return Err(fail(EXIT_PARSE, format!("{name}: {count} parse error(s)")));
    };
    if run_validation {
        let report = validate(&policy, mode);
        io.diagnostics(name, &report.diagnostics, report_on_stdout);
        if !report.is_clean {
            let count = report.diagnostics.iter().filter(|d| d.is_error()).count();
            return Err(fail(
                EXIT_VALIDATION,
                format!("{name}: {count} validation error(s)"),
            ));
        }
    }
    Ok(policy)
}

fn summary(policy: &PolicyFile) -> String {
    let mut out = format!(
        "{}: {} user-agent block(s), indent {}\n",
        policy.source_name,
        policy.blocks.len(),
        policy.indent_unit.label()
    );
    for block in &policy.blocks {
        let agents = match &block.agents {
            crate::model::AgentSelector::AllAgents => "*".to_string(),
            crate::model::AgentSelector::Named(names) => names
                .iter()
                .map(|n| n.as_str())
                .collect::<Vec<_>>()
                .join(" "),
        };
        out.push_str(&format!(
            "User-agent: {agents} (line {})\n",
            block.span.line
        ));
        for path in &block.paths {
            out.push_str(&format!(
                "  Path: {} {} (line {})\n",
                path.path, path.file_type, path.span.line
            ));
            for element in &path.elements {
                out.push_str(&format!(
                    "    Element: {} (line {})\n",
                    element.name, element.span.line
                ));
                for rule in &element.rules {
                    out.push_str(&format!(
                        "      {}: {} (line {})\n",
                        rule.keyword(),
                        rule.actions(),
                        rule.span().line
                    ));
                    if let Rule::Guide(guide) = rule {
                        for g in &guide.guidelines {
                            out.push_str(&format!("        [{}] {}\n", g.language, g.text));
                        }
                    }
                }
            }
        }
    }
    out
}

fn compile_to_string(policy: &PolicyFile) -> Result<String, Failure> {
    compile_xml(policy)
        .map(|doc| doc.text)
        .map_err(|e| fail(EXIT_VALIDATION, e.to_string()))
}

fn execute(command: Command, io: &mut Io<'_>) -> Outcome {
    match command {
        Command::Parse { file, mode } => {
            let (text, name) = read_source(&file)?;
            let policy = load(io, &text, &name, mode.mode(), false, false)?;
            io.write_out(&summary(&policy))
        }
        Command::Validate { file, mode } => {
            let (text, name) = read_source(&file)?;
            load(io, &text, &name, mode.mode(), true, true).map(|_| ())
        }
        Command::Compile { file, output, mode } => {
            let (text, name) = read_source(&file)?;
            let policy = load(io, &text, &name, mode.mode(), true, false)?;
            let xml = compile_to_string(&policy)?;
            match output {
                Some(path) => std::fs::write(&path, xml)
                    .map_err(|e| fail(EXIT_IO, format!("cannot write `{}`: {e}", path.display()))),
                None => io.write_out(&xml),
            }
        }
        Command::Query {
            file,
            agent,
            path,
            element,
            action,
            json,
            mode,
        } => {
            let action =
                action_from_string(&action).map_err(|e| fail(EXIT_USAGE, e.to_string()))?;
            let query = Query::new(agent, path, element, action)
                .map_err(|e| fail(EXIT_USAGE, e.to_string()))?;
            let (text, name) = read_source(&file)?;
            let policy = load(io, &text, &name, mode.mode(), true, false)?;
            let decision = evaluate(&policy, &query);
            if json {
                io.write_out(&format!("{}\n", decision.to_json()))
            } else {
                let mut out = format!("{}\n", decision.kind);
                if decision.kind == DecisionKind::Guided {
                    for (lang, text) in &decision.guidelines {
                        out.push_str(&format!("  [{lang}] {text}\n"));
                    }
                }
                io.write_out(&out)
            }
        }
        Command::Prompt {
            file,
            agent,
            lang,
            no_fallback,
            mode,
        } => {
            if !crate::model::is_agent_name(&agent) {
                return Err(fail(EXIT_USAGE, format!("invalid agent name `{agent}`")));
            }
            let preferred_language =
                LanguageTag::parse(&lang).map_err(|e| fail(EXIT_USAGE, e.to_string()))?;
            let (text, name) = read_source(&file)?;
            let policy = load(io, &text, &name, mode.mode(), true, false)?;
            let request = PromptRequest {
                agent,
                preferred_language,
                fallback: !no_fallback,
            };
            io.write_out(&format!("{}\n", render_prompt(&policy, &request)))
        }
        Command::Fetch {
            origin,
            compile,
            validate: run_validation,
            mode,
        } => {
            let origin = Origin::parse(&origin).map_err(|e| fail(EXIT_USAGE, e.to_string()))?;
            let name = origin.policy_url().to_string();
            let text = match fetch(&origin) {
                FetchOutcome::Found(text) => text,
                FetchOutcome::NoPolicy => {
                    let _ = writeln!(io.err, "no policy at {name}; every action is allowed");
                    String::new()
                }
                FetchOutcome::TransportError(detail) => {
                    return Err(fail(EXIT_IO, format!("cannot fetch {name}: {detail}")))
                }
                FetchOutcome::TooLarge => {
                    return Err(fail(
                        EXIT_IO,
                        format!("{name} exceeds {} bytes", crate::fetch::MAX_BODY_BYTES),
                    ))
                }
            };
            if compile {
                let policy = load(io, &text, &name, mode.mode(), true, false)?;
                let xml = compile_to_string(&policy)?;
                io.write_out(&xml)
            } else if run_validation {
                load(io, &text, &name, mode.mode(), true, true).map(|_| ())
            } else {
                io.write_out(&text)
            }
        }
    }
}

/// Runs the command line with explicit arguments (including the program
/// name) and output streams. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let mut io = Io { out, err };
    match execute(cli.command, &mut io) {
        Ok(()) => EXIT_OK,
        Err(failure) => {
            let _ = writeln!(io.err, "aitxt: {}", failure.message);
            failure.code
        }
    }
}
