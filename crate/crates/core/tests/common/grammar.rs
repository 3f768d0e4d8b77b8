//! Conformance fixtures, at least one accepted and one rejected document per
//! grammar production.

use aitxt::{parse, Mode};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expect {
    Accept,
    /// Rejected, and the only error code reported is this one.
    Reject(&'static str),
}

pub struct Fixture {
    pub production: &'static str,
    pub name: &'static str,
    pub text: String,
    pub expect: Expect,
}

pub const PRODUCTIONS: [&str; 17] = [
    "ai-txt-file",
    "comment-line",
    "user-agent-block",
    "path-block",
    "element-block",
    "action-block",
    "disallow-block",
    "guide-block",
    "language-block",
    "guideline-block",
    "file-type",
    "eol",
    "white-space",
    "indentation",
    "agent-name",
    "path",
    "path-segment",
];

pub const FIG1: &str = "User-agent: *
  Path: /articles/today.html html
    Element: p
      Disallow: Train Summarize
    Element: img
      Disallow: Manipulate
";

/// A complete document whose only rule line is `rule` (depth 3).
fn with_rule(rule: &str) -> String {
    format!("User-agent: *\n  Path: / html\n    Element: p\n      {rule}\n")
}

/// A complete document with `Guide: Summarize` followed by `body` lines at
/// depth 4.
fn with_guide(body: &[&str]) -> String {
    let mut text = with_rule("Guide: Summarize");
    for line in body {
        text.push_str("        ");
        text.push_str(line);
        text.push('\n');
    }
    text
}

fn with_path_line(path_line: &str) -> String {
    format!("User-agent: *\n  {path_line}\n    Element: *\n      Disallow: Train\n")
}

fn with_agents(agents: &str) -> String {
    format!("User-agent: {agents}\n  Path: / html\n    Element: p\n      Disallow: Train\n")
}

fn accept(production: &'static str, name: &'static str, text: impl Into<String>) -> Fixture {
    Fixture {
        production,
        name,
        text: text.into(),
        expect: Expect::Accept,
    }
}

fn reject(
    production: &'static str,
    name: &'static str,
    text: impl Into<String>,
    code: &'static str,
) -> Fixture {
    Fixture {
        production,
        name,
        text: text.into(),
        expect: Expect::Reject(code),
    }
}

pub fn fixtures() -> Vec<Fixture> {
    vec![
        accept("ai-txt-file", "empty document", ""),
        accept("ai-txt-file", "two-rule document", FIG1),
        accept(
            "ai-txt-file",
            "two user-agent blocks",
            format!(
                "{FIG1}User-agent: GPTBot\n  Path: /x json\n    Element: a.b\n      Disallow: *\n"
            ),
        ),
        reject("ai-txt-file", "free text line", "Hello world\n", "P001"),
        reject(
            "ai-txt-file",
            "lowercase keyword",
            "user-agent: *\n",
            "P001",
        ),
        accept("comment-line", "comment only", "# comment only\n"),
        accept(
            "comment-line",
            "comments between blocks",
            format!("# head\n{FIG1}#\n# tail: Disallow: Train\n"),
        ),
        reject(
            "comment-line",
            "slash comment",
            "// not a comment\n",
            "P001",
        ),
        accept("user-agent-block", "wildcard agent", FIG1),
        accept(
            "user-agent-block",
            "several agents",
            with_agents("GPTBot ClaudeBot"),
        ),
        reject(
            "user-agent-block",
            "no path blocks",
            "User-agent: *\n",
            "P023",
        ),
        reject(
            "user-agent-block",
            "empty agent list",
            with_agents(""),
            "P005",
        ),
        reject(
            "user-agent-block",
            "wildcard with names",
            with_agents("* GPTBot"),
            "P006",
        ),
        accept(
            "agent-name",
            "underscore and digits",
            with_agents("Bot_2 _x"),
        ),
        reject("agent-name", "punctuation", with_agents("GPT Bot!"), "P004"),
        reject("agent-name", "hyphen", with_agents("GPT-Bot"), "P004"),
        accept(
            "path-block",
            "two path blocks",
            format!(
                "{FIG1}  Path: /feed.xml xml\n    Element: channel.title\n      Disallow: Index\n"
            ),
        ),
        reject(
            "path-block",
            "no element blocks",
            "User-agent: *\n  Path: / html\n",
            "P024",
        ),
        reject(
            "path-block",
            "missing file type",
            with_path_line("Path: /"),
            "P010",
        ),
        reject(
            "path-block",
            "outside a user-agent block",
            "  Path: / html\n    Element: p\n      Disallow: Train\n",
            "P022",
        ),
        accept("path", "root", with_path_line("Path: / html")),
        accept(
            "path",
            "nested file",
            with_path_line("Path: /articles/today.html html"),
        ),
        reject(
            "path",
            "relative",
            with_path_line("Path: articles html"),
            "P008",
        ),
        accept(
            "path-segment",
            "every permitted character",
            with_path_line("Path: /a_B.9&%20~:@-/x html"),
        ),
        reject(
            "path-segment",
            "pipe",
            with_path_line("Path: /a|b html"),
            "P008",
        ),
        reject(
            "path-segment",
            "non-ascii",
            with_path_line("Path: /caf\u{e9} html"),
            "P008",
        ),
        accept("file-type", "json", with_path_line("Path: /data json")),
        accept("file-type", "xml", with_path_line("Path: /data xml")),
        reject("file-type", "pdf", with_path_line("Path: /doc pdf"), "P009"),
        reject(
            "file-type",
            "upper case",
            with_path_line("Path: /doc HTML"),
            "P009",
        ),
        accept(
            "element-block",
            "selector element",
            with_rule("Disallow: Train").replace("Element: p", "Element: div.note > p"),
        ),
        accept(
            "element-block",
            "wildcard element",
            with_rule("Disallow: Train").replace("Element: p", "Element: *"),
        ),
        reject(
            "element-block",
            "no action blocks",
            "User-agent: *\n  Path: / html\n    Element: p\n",
            "P012",
        ),
        reject(
            "element-block",
            "empty name",
            with_rule("Disallow: Train").replace("Element: p", "Element:"),
            "P011",
        ),
        accept(
            "action-block",
            "disallow then guide",
            format!(
                "{}      Guide: Cite\n        Lang: en\n        Guideline: Link back.\n",
                with_rule("Disallow: Train")
            ),
        ),
        reject(
            "action-block",
            "unknown action keyword",
            with_rule("Disallow: Train\n      Allow: Train"),
            "P001",
        ),
        reject(
            "action-block",
            "action at element depth",
            "User-agent: *\n  Path: / html\n    Element: p\n    Disallow: Train\n",
            "P002",
        ),
        accept("disallow-block", "all actions", with_rule("Disallow: *")),
        accept(
            "disallow-block",
            "named actions",
            with_rule("Disallow: Train Summarize"),
        ),
        reject(
            "disallow-block",
            "no actions",
            with_rule("Disallow:"),
            "P018",
        ),
        reject(
            "disallow-block",
            "action outside the vocabulary",
            with_rule("Disallow: Crop"),
            "P017",
        ),
        reject(
            "disallow-block",
            "wildcard with names",
            with_rule("Disallow: * Train"),
            "P020",
        ),
        reject(
            "disallow-block",
            "lower-case action",
            with_rule("Disallow: train"),
            "P017",
        ),
        accept(
            "guide-block",
            "two languages",
            with_guide(&[
                "Lang: en-US",
                "Guideline: Keep it short.",
                "Lang: fr",
                "Guideline: Court.",
            ]),
        ),
        reject(
            "guide-block",
            "no language pairs",
            with_rule("Guide: Summarize"),
            "P013",
        ),
        accept(
            "language-block",
            "language only",
            with_guide(&["Lang: de", "Guideline: Kurz."]),
        ),
        accept(
            "language-block",
            "language and region",
            with_guide(&["Lang: zh-CN", "Guideline: x"]),
        ),
        reject(
            "language-block",
            "language name",
            with_guide(&["Lang: english", "Guideline: Keep it short."]),
            "P016",
        ),
        reject(
            "language-block",
            "two languages in a row",
            with_guide(&["Lang: en", "Lang: fr", "Guideline: Court."]),
            "P014",
        ),
        accept(
            "guideline-block",
            "punctuation and markup",
            with_guide(&[
                "Lang: en",
                "Guideline: Use <q>quotes</q> & cite: \"source\".",
            ]),
        ),
        reject(
            "guideline-block",
            "empty text",
            with_guide(&["Lang: en", "Guideline: "]),
            "P025",
        ),
        accept("eol", "crlf line endings", FIG1.replace('\n', "\r\n")),
        accept("eol", "no final newline", FIG1.trim_end()),
        reject(
            "eol",
            "two keywords on one line",
            with_rule("Disallow: Train Guide: Cite"),
            "P017",
        ),
        accept(
            "white-space",
            "trailing spaces",
            with_rule("Disallow: Train Summarize  "),
        ),
        reject(
            "white-space",
            "two spaces after colon",
            with_rule("Disallow:  Train"),
            "P021",
        ),
        reject(
            "white-space",
            "no space after colon",
            with_rule("Disallow:Train"),
            "P021",
        ),
        reject(
            "white-space",
            "tab between actions",
            with_rule("Disallow: Train\tCite"),
            "P021",
        ),
        accept("indentation", "tabs", FIG1.replace("  ", "\t")),
        accept("indentation", "four spaces", FIG1.replace("  ", "    ")),
        reject(
            "indentation",
            "mixed units",
            "User-agent: *\n  Path: / html\n\t\tElement: p\n      Disallow: Train\n",
            "P003",
        ),
        reject(
            "indentation",
            "three spaces",
            "User-agent: *\n   Path: / html\n    Element: p\n      Disallow: Train\n",
            "P003",
        ),
    ]
}

/// Parses the fixture in strict mode and describes any mismatch.
pub fn check(fixture: &Fixture) -> Result<(), String> {
    let result = parse(&fixture.text, fixture.name, Mode::Strict);
    let errors: Vec<&str> = result.errors().map(|d| d.code).collect();
    match fixture.expect {
        Expect::Accept if result.policy.is_some() && errors.is_empty() => Ok(()),
        Expect::Accept => Err(format!("expected acceptance, got {errors:?}")),
        Expect::Reject(code)
            if result.policy.is_none()
                && !errors.is_empty()
                && errors.iter().all(|c| *c == code) =>
        {
            Ok(())
        }
        Expect::Reject(code) => Err(format!("expected only {code}, got {errors:?}")),
    }
}
