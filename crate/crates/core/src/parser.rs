//! Line-oriented parser and canonical printer for ai.txt.
//!
//! The language is indentation-sensitive but every line starts with a
//! keyword that fixes its nesting depth, so parsing is a single pass over
//! lines with a stack of open blocks. Indentation is checked against the
//! unit inferred from the first indented line.
//!
//! Diagnostic codes:
//!
//! | code | meaning |
//! |------|---------|
//! | P001 | unrecognized line (no known keyword) |
//! | P002 | keyword at the wrong indentation depth |
//! | P003 | inconsistent indentation (mixed units, tabs and spaces, bad width) |
//! | P004 | invalid agent name |
//! | P005 | empty agent list |
//! | P006 | `*` mixed with named agents |
//! | P007 | duplicate agent name (warning) |
//! | P008 | invalid path |
//! | P009 | unknown file type |
//! | P010 | malformed `Path:` line |
//! | P011 | empty element name |
//! | P012 | element block without action blocks |
//! | P013 | guide block without language/guideline pairs |
//! | P014 | `Lang:` not followed by `Guideline:` |
//! | P015 | `Guideline:` without a preceding `Lang:` |
//! | P016 | invalid language tag |
//! | P017 | unknown action (error in strict mode, warning in lenient mode) |
//! | P018 | empty action list |
//! | P019 | duplicate action (warning) |
//! | P020 | `*` mixed with named actions |
//! | P021 | separator is not exactly one space |
//! | P022 | block outside of its enclosing block |
//! | P023 | user-agent block without path blocks |
//! | P024 | path block without element blocks |
//! | P025 | empty guideline text |

use std::fmt::Write as _;

use crate::diagnostic::{self, Diagnostic, Mode};
use crate::model::{
    action_from_string, is_agent_name, Action, ActionList, AgentName, AgentSelector, DisallowRule,
    ElementBlock, FileType, GuideRule, Guideline, IndentUnit, LanguageTag, PathBlock, PolicyFile,
    Rule, SourceSpan, UserAgentBlock,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseResult {
    /// Present only when `diagnostics` holds no errors.
    pub policy: Option<PolicyFile>,
    pub diagnostics: Vec<Diagnostic>,
}

impl ParseResult {
    pub fn has_errors(&self) -> bool {
        diagnostic::has_errors(&self.diagnostics)
    }

    pub fn errors(&self) -> impl Iterator<Item = &Diagnostic> {
        self.diagnostics.iter().filter(|d| d.is_error())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Keyword {
    UserAgent,
    Path,
    Element,
    Disallow,
    Guide,
    Lang,
    Guideline,
}

impl Keyword {
    const ALL: [Keyword; 7] = [
        Keyword::UserAgent,
        Keyword::Path,
        Keyword::Element,
        Keyword::Disallow,
        Keyword::Guide,
        Keyword::Lang,
        Keyword::Guideline,
    ];

    fn text(self) -> &'static str {
        match self {
            Keyword::UserAgent => "User-agent:",
            Keyword::Path => "Path:",
            Keyword::Element => "Element:",
            Keyword::Disallow => "Disallow:",
            Keyword::Guide => "Guide:",
            Keyword::Lang => "Lang:",
            Keyword::Guideline => "Guideline:",
        }
    }

    fn depth(self) -> usize {
        match self {
            Keyword::UserAgent => 0,
            Keyword::Path => 1,
            Keyword::Element => 2,
            Keyword::Disallow | Keyword::Guide => 3,
            Keyword::Lang | Keyword::Guideline => 4,
        }
    }

    fn recognize(rest: &str) -> Option<Keyword> {
        Keyword::ALL
            .into_iter()
            .find(|k| rest.starts_with(k.text()))
    }
}

fn is_path_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || "_.&%/~:@-".contains(c)
}

pub fn is_valid_path(path: &str) -> bool {
    path.starts_with('/') && path.chars().all(is_path_char)
}

fn column_of(line: &str, byte_offset: usize) -> u32 {
    line[..byte_offset].chars().count() as u32 + 1
}

fn char_len(s: &str) -> u32 {
    s.chars().count() as u32
}

/// One keyword line after indentation and separator checks.
struct Line<'a> {
    number: u32,
    raw: &'a str,
    /// Byte offset of the keyword.
    keyword_at: usize,
    /// Line content after `Keyword: `; empty when nothing followed.
    value: &'a str,
    /// Byte offset of `value` within `raw`.
    value_at: usize,
}

impl Line<'_> {
    fn span(&self) -> SourceSpan {
        let body = self.raw[self.keyword_at..].trim_end_matches([' ', '\t']);
        SourceSpan::new(
            self.number,
            column_of(self.raw, self.keyword_at),
            char_len(body),
        )
    }

    fn span_at(&self, byte_offset: usize, len: u32) -> SourceSpan {
        SourceSpan::new(self.number, column_of(self.raw, byte_offset), len)
    }

    /// Space-separated tokens of the value with their byte offsets. Tabs
    /// also separate tokens but make the line irregular.
    fn tokens(&self) -> (Vec<(&str, usize)>, bool) {
        let trimmed = self.value.trim_end_matches([' ', '\t']);
        let mut tokens = Vec::new();
        let mut irregular = trimmed.contains('\t');
        if trimmed.is_empty() {
            return (tokens, irregular);
        }
        let mut offset = self.value_at;
        for piece in trimmed.split([' ', '\t']) {
            if piece.is_empty() {
                irregular = true;
            } else {
                tokens.push((piece, offset));
            }
            offset += piece.len() + 1;
        }
        (tokens, irregular)
    }
}

struct GuideBuilder {
    actions: ActionList,
    guidelines: Vec<Guideline>,
    pending_lang: Option<(LanguageTag, SourceSpan)>,
    span: SourceSpan,
}

struct ElementBuilder {
    name: String,
    rules: Vec<Rule>,
    span: SourceSpan,
}

struct PathBuilder {
    path: String,
    file_type: FileType,
    elements: Vec<ElementBlock>,
    span: SourceSpan,
}

struct AgentBuilder {
    agents: AgentSelector,
    paths: Vec<PathBlock>,
    span: SourceSpan,
}

struct Parser {
    mode: Mode,
    unit: Option<IndentUnit>,
    diagnostics: Vec<Diagnostic>,
    blocks: Vec<UserAgentBlock>,
    agent: Option<AgentBuilder>,
    path: Option<PathBuilder>,
    element: Option<ElementBuilder>,
    guide: Option<GuideBuilder>,
}

impl Parser {
    fn new(mode: Mode) -> Self {
        Parser {
            mode,
            unit: None,
            diagnostics: Vec::new(),
            blocks: Vec::new(),
            agent: None,
            path: None,
            element: None,
            guide: None,
        }
    }

    fn error(&mut self, code: &'static str, message: impl Into<String>, span: SourceSpan) {
        self.diagnostics
            .push(Diagnostic::error(code, message, span));
    }

    fn warning(&mut self, code: &'static str, message: impl Into<String>, span: SourceSpan) {
        self.diagnostics
            .push(Diagnostic::warning(code, message, span));
    }

    fn close_guide(&mut self) {
        let Some(guide) = self.guide.take() else {
            return;
        };
        if let Some((tag, span)) = guide.pending_lang {
            self.error(
                "P014",
                format!("`Lang: {tag}` must be followed by a `Guideline:` line"),
                span,
            );
        }
        if guide.guidelines.is_empty() {
            self.error(
                "P013",
                "guide block needs at least one `Lang:`/`Guideline:` pair",
                guide.span,
            );
        }
        let rule = Rule::Guide(GuideRule {
            actions: guide.actions,
            guidelines: guide.guidelines,
            span: guide.span,
        });
        if let Some(element) = self.element.as_mut() {
            element.rules.push(rule);
        }
    }

    fn close_element(&mut self) {
        self.close_guide();
        let Some(element) = self.element.take() else {
            return;
        };
        if element.rules.is_empty() {
            self.error(
                "P012",
                format!(
                    "element `{}` needs at least one `Disallow:` or `Guide:` block",
                    element.name
                ),
                element.span,
            );
        }
        if let Some(path) = self.path.as_mut() {
            path.elements.push(ElementBlock {
                name: element.name,
                rules: element.rules,
                span: element.span,
            });
        }
    }

    fn close_path(&mut self) {
        self.close_element();
        let Some(path) = self.path.take() else {
            return;
        };
        if path.elements.is_empty() {
            self.error(
                "P024",
                format!("path `{}` needs at least one `Element:` block", path.path),
                path.span,
            );
        }
        if let Some(agent) = self.agent.as_mut() {
            agent.paths.push(PathBlock {
                path: path.path,
                file_type: path.file_type,
                elements: path.elements,
                span: path.span,
            });
        }
    }

    fn close_agent(&mut self) {
        self.close_path();
        let Some(agent) = self.agent.take() else {
            return;
        };
        if agent.paths.is_empty() {
            self.error(
                "P023",
                "user-agent block needs at least one `Path:` block",
                agent.span,
            );
        }
        self.blocks.push(UserAgentBlock {
            agents: agent.agents,
            paths: agent.paths,
            span: agent.span,
        });
    }

    /// Opens placeholder parents so that children of a misplaced line do
    /// not cascade into further errors. The document already has an error.
    fn ensure_agent(&mut self, span: SourceSpan) {
        if self.agent.is_none() {
            self.agent = Some(AgentBuilder {
                agents: AgentSelector::AllAgents,
                paths: Vec::new(),
                span,
            });
        }
    }

    fn ensure_path(&mut self, span: SourceSpan) {
        if self.path.is_none() {
            self.ensure_agent(span);
            self.path = Some(PathBuilder {
                path: "/".into(),
                file_type: FileType::Html,
                elements: Vec::new(),
                span,
            });
        }
    }

    fn ensure_element(&mut self, span: SourceSpan) {
        if self.element.is_none() {
            self.ensure_path(span);
            self.element = Some(ElementBuilder {
                name: "*".into(),
                rules: Vec::new(),
                span,
            });
        }
    }

    fn line(&mut self, number: u32, raw: &str) {
        let indent_len = raw.len() - raw.trim_start_matches([' ', '\t']).len();
        let indent = &raw[..indent_len];
        let rest = &raw[indent_len..];
        if rest.is_empty() || rest.starts_with('#') {
            return;
        }

        let Some(keyword) = Keyword::recognize(rest) else {
            let word_len = rest.find([' ', ':']).map_or(rest.len(), |i| {
                if rest.as_bytes()[i] == b':' {
                    i + 1
                } else {
                    i
                }
            });
            let span = SourceSpan::new(
                number,
                column_of(raw, indent_len),
                char_len(&rest[..word_len]),
            );
            self.error(
                "P001",
                format!("unrecognized line starting with `{}`", &rest[..word_len]),
                span,
            );
            return;
        };

        self.check_indentation(number, indent, keyword);

        if keyword != Keyword::Guideline {
            if let Some((tag, span)) = self.guide.as_mut().and_then(|g| g.pending_lang.take()) {
                self.error(
                    "P014",
                    format!("`Lang: {tag}` must be followed by a `Guideline:` line"),
                    span,
                );
            }
        }

        let keyword_at = indent_len;
        let after_at = keyword_at + keyword.text().len();
        let after = &raw[after_at..];
        let mut line = Line {
            number,
            raw,
            keyword_at,
            value: "",
            value_at: raw.len(),
        };

        if !after.trim_matches([' ', '\t']).is_empty() {
            let value_start =
                after_at + (after.len() - after.trim_start_matches([' ', '\t']).len());
            if after.starts_with(' ') && value_start == after_at + 1 {
                // exactly one space, the expected form
            } else {
                let message = if value_start == after_at {
                    format!("expected a space after `{}`", keyword.text())
                } else {
                    format!("expected exactly one space after `{}`", keyword.text())
                };
                let span = SourceSpan::new(
                    number,
                    column_of(raw, after_at),
                    char_len(&raw[after_at..value_start]),
                );
                self.error("P021", message, span);
            }
            line.value = &raw[value_start..];
            line.value_at = value_start;
        }

        match keyword {
            Keyword::UserAgent => self.user_agent(&line),
            Keyword::Path => self.path_line(&line),
            Keyword::Element => self.element_line(&line),
            Keyword::Disallow => self.disallow_line(&line),
            Keyword::Guide => self.guide_line(&line),
            Keyword::Lang => self.lang_line(&line),
            Keyword::Guideline => self.guideline_line(&line),
        }
    }

    fn check_indentation(&mut self, number: u32, indent: &str, keyword: Keyword) {
        let expected = keyword.depth();
        let span = SourceSpan::new(number, 1, char_len(indent));
        if indent.is_empty() {
            if expected != 0 {
                self.error(
                    "P002",
                    format!(
                        "`{}` must be indented {} level(s), found 0",
                        keyword.text(),
                        expected
                    ),
                    span,
                );
            }
            return;
        }

        let tabs = indent.chars().filter(|&c| c == '\t').count();
        let spaces = indent.len() - tabs;
        if tabs > 0 && spaces > 0 {
            self.error("P003", "indentation mixes tabs and spaces", span);
            return;
        }

        let unit = match self.unit {
            Some(unit) => unit,
            None => {
                let inferred = if tabs > 0 {
                    Some(IndentUnit::Tab)
                } else if expected > 0 && spaces == 2 * expected {
                    Some(IndentUnit::TwoSpaces)
                } else if expected > 0 && spaces == 4 * expected {
                    Some(IndentUnit::FourSpaces)
                } else if spaces == 2 {
                    Some(IndentUnit::TwoSpaces)
                } else if spaces == 4 {
                    Some(IndentUnit::FourSpaces)
                } else {
                    None
                };
                match inferred {
                    Some(unit) => {
                        self.unit = Some(unit);
                        unit
                    }
                    None => {
                        self.error(
                            "P003",
                            format!(
                                "cannot infer an indentation unit from {spaces} spaces; use 2 spaces, 4 spaces or a tab"
                            ),
                            span,
                        );
                        return;
                    }
                }
            }
        };

        let depth = match unit {
            IndentUnit::Tab if spaces == 0 => Some(tabs),
            IndentUnit::TwoSpaces if tabs == 0 && spaces.is_multiple_of(2) => Some(spaces / 2),
            IndentUnit::FourSpaces if tabs == 0 && spaces.is_multiple_of(4) => Some(spaces / 4),
            _ => None,
        };
        match depth {
            None => self.error(
                "P003",
                format!(
                    "indentation does not match the document's unit ({})",
                    unit.label()
                ),
                span,
            ),
            Some(depth) if depth != expected => self.error(
                "P002",
                format!(
                    "`{}` must be indented {} level(s), found {}",
                    keyword.text(),
                    expected,
                    depth
                ),
                span,
            ),
            Some(_) => {}
        }
    }

    fn separator_check(&mut self, line: &Line<'_>, irregular: bool) {
        if irregular {
            self.error(
                "P021",
                "values must be separated by exactly one space",
                line.span_at(line.value_at, char_len(line.value)),
            );
        }
    }

    fn user_agent(&mut self, line: &Line<'_>) {
        self.close_agent();
        let span = line.span();
        let (tokens, irregular) = line.tokens();
        self.separator_check(line, irregular);

        let agents = if tokens.is_empty() {
            self.error(
                "P005",
                "`User-agent:` needs `*` or at least one agent name",
                span,
            );
            AgentSelector::Named(Vec::new())
        } else if tokens.iter().any(|(t, _)| *t == "*") {
            if tokens.len() > 1 {
                self.error(
                    "P006",
                    "`*` cannot be combined with named agents",
                    line.span_at(line.value_at, char_len(line.value.trim_end())),
                );
            }
            AgentSelector::AllAgents
        } else {
            let mut names: Vec<AgentName> = Vec::new();
            for (token, at) in tokens {
                let token_span = line.span_at(at, char_len(token));
                if !is_agent_name(token) {
                    let bad = token
                        .char_indices()
                        .find(|(_, c)| !(c.is_ascii_alphanumeric() || *c == '_'))
                        .map_or(0, |(i, _)| i);
                    self.error(
                        "P004",
                        format!(
                            "invalid agent name `{token}`: only a-z, A-Z, 0-9 and `_` are allowed"
                        ),
                        line.span_at(at + bad, char_len(token) - char_len(&token[..bad])),
                    );
                    continue;
                }
                let name = AgentName::new(token).expect("checked above");
                if names.contains(&name) {
                    self.warning(
                        "P007",
                        format!("duplicate agent name `{token}`"),
                        token_span,
                    );
                } else {
                    names.push(name);
                }
            }
            AgentSelector::Named(names)
        };

        self.agent = Some(AgentBuilder {
            agents,
            paths: Vec::new(),
            span,
        });
    }

    fn path_line(&mut self, line: &Line<'_>) {
        self.close_path();
        let span = line.span();
        if self.agent.is_none() {
            self.error(
                "P022",
                "`Path:` must appear inside a `User-agent:` block",
                span,
            );
            self.ensure_agent(span);
        }

        let (tokens, irregular) = line.tokens();
        self.separator_check(line, irregular);
        let mut path = String::from("/");
        let mut file_type = FileType::Html;
        match tokens.as_slice() {
            [] => self.error("P010", "`Path:` needs a path and a file type", span),
            [(p, at)] => {
                self.check_path(line, p, *at);
                path = p.to_string();
                self.error(
                    "P010",
                    format!("`Path: {p}` is missing a file type (html, json or xml)"),
                    span,
                );
            }
            [(p, at), (ft, ft_at), extra @ ..] => {
                self.check_path(line, p, *at);
                path = p.to_string();
                match ft.parse::<FileType>() {
                    Ok(parsed) => file_type = parsed,
                    Err(_) => self.error(
                        "P009",
                        format!("unknown file type `{ft}`: expected html, json or xml"),
                        line.span_at(*ft_at, char_len(ft)),
                    ),
                }
                if let Some((first, first_at)) = extra.first() {
                    self.error(
                        "P010",
                        format!("unexpected `{first}` after the file type"),
                        line.span_at(*first_at, char_len(first)),
                    );
                }
            }
        }

        self.path = Some(PathBuilder {
            path,
            file_type,
            elements: Vec::new(),
            span,
        });
    }

    fn check_path(&mut self, line: &Line<'_>, path: &str, at: usize) {
        if !path.starts_with('/') {
            self.error(
                "P008",
                format!("path `{path}` must start with `/`"),
                line.span_at(at, char_len(path)),
            );
        } else if let Some((i, c)) = path.char_indices().find(|(_, c)| !is_path_char(*c)) {
            self.error(
                "P008",
                format!("character `{c}` is not allowed in a path"),
                line.span_at(at + i, 1),
            );
        }
    }

    fn element_line(&mut self, line: &Line<'_>) {
        self.close_element();
        let span = line.span();
        if self.path.is_none() {
            self.error(
                "P022",
                "`Element:` must appear inside a `Path:` block",
                span,
            );
            self.ensure_path(span);
        }
        let name = line.value.trim_matches([' ', '\t']);
        if name.is_empty() {
            self.error("P011", "`Element:` needs an element name", span);
        }
        self.element = Some(ElementBuilder {
            name: name.to_string(),
            rules: Vec::new(),
            span,
        });
    }

    fn action_list(&mut self, line: &Line<'_>, keyword: &str) -> ActionList {
        let (tokens, irregular) = line.tokens();
        self.separator_check(line, irregular);
        if tokens.is_empty() {
            self.error(
                "P018",
                format!("`{keyword}:` needs `*` or at least one action"),
                line.span(),
            );
            return ActionList::All;
        }
        if tokens.iter().any(|(t, _)| *t == "*") {
            if tokens.len() > 1 {
                self.error(
                    "P020",
                    "`*` cannot be combined with named actions",
                    line.span_at(line.value_at, char_len(line.value.trim_end())),
                );
            }
            return ActionList::All;
        }

        let mut actions: Vec<Action> = Vec::new();
        for (token, at) in tokens {
            let token_span = line.span_at(at, char_len(token));
            let action = match action_from_string(token) {
                Ok(name) => Action::Known(name),
                Err(_) => {
                    let message = format!("unknown action `{token}`");
                    match self.mode {
                        Mode::Strict => {
                            self.error("P017", message, token_span);
                            continue;
                        }
                        Mode::Lenient => {
                            self.warning(
                                "P017",
                                format!("{message}; kept as an extension action"),
                                token_span,
                            );
                            Action::Extension(token.to_string())
                        }
                    }
                }
            };
            if actions.contains(&action) {
                self.warning("P019", format!("duplicate action `{token}`"), token_span);
            } else {
                actions.push(action);
            }
        }
        ActionList::named(actions).unwrap_or(ActionList::All)
    }

    fn disallow_line(&mut self, line: &Line<'_>) {
        self.close_guide();
        let span = line.span();
        if self.element.is_none() {
            self.error(
                "P022",
                "`Disallow:` must appear inside an `Element:` block",
                span,
            );
            self.ensure_element(span);
        }
        let actions = self.action_list(line, "Disallow");
        if let Some(element) = self.element.as_mut() {
            element
                .rules
                .push(Rule::Disallow(DisallowRule { actions, span }));
        }
    }

    fn guide_line(&mut self, line: &Line<'_>) {
        self.close_guide();
        let span = line.span();
        if self.element.is_none() {
            self.error(
                "P022",
                "`Guide:` must appear inside an `Element:` block",
                span,
            );
            self.ensure_element(span);
        }
        let actions = self.action_list(line, "Guide");
        self.guide = Some(GuideBuilder {
            actions,
            guidelines: Vec::new(),
            pending_lang: None,
            span,
        });
    }

    fn lang_line(&mut self, line: &Line<'_>) {
        let span = line.span();
        if self.guide.is_none() {
            self.error("P022", "`Lang:` must appear inside a `Guide:` block", span);
            return;
        }
        let raw = line.value.trim_end_matches([' ', '\t']);
        let tag = match LanguageTag::parse(raw) {
            Ok(tag) => tag,
            Err(_) => {
                let message = if raw.is_empty() {
                    "`Lang:` needs a language tag such as en-US".to_string()
                } else {
                    format!("invalid language tag `{raw}`: expected a form like en or en-US")
                };
                let tag_span = if raw.is_empty() {
                    span
                } else {
                    line.span_at(line.value_at, char_len(raw))
                };
                self.error("P016", message, tag_span);
                LanguageTag::new_unchecked(raw)
            }
        };
        if let Some(guide) = self.guide.as_mut() {
            guide.pending_lang = Some((tag, span));
        }
    }

    fn guideline_line(&mut self, line: &Line<'_>) {
        let span = line.span();
        let Some(guide) = self.guide.as_mut() else {
            self.error(
                "P022",
                "`Guideline:` must appear inside a `Guide:` block",
                span,
            );
            return;
        };
        let Some((language, _)) = guide.pending_lang.take() else {
            self.error(
                "P015",
                "`Guideline:` must directly follow a `Lang:` line",
                span,
            );
            return;
        };
        let text = line.value;
        guide.guidelines.push(Guideline {
            language,
            text: text.to_string(),
        });
        if text.trim().is_empty() {
            self.error("P025", "`Guideline:` needs instruction text", span);
        }
    }

    fn finish(mut self, source_name: &str) -> ParseResult {
        self.close_agent();
        let mut diagnostics = self.diagnostics;
        diagnostic::sort(&mut diagnostics);
        let policy = (!diagnostic::has_errors(&diagnostics)).then(|| PolicyFile {
            blocks: self.blocks,
            indent_unit: self.unit.unwrap_or_default(),
            source_name: source_name.to_string(),
        });
        ParseResult {
            policy,
            diagnostics,
        }
    }
}

/// Parses ai.txt source text. Never fails: problems are reported as
/// diagnostics and the policy is withheld if any of them is an error.
pub fn parse(text: &str, source_name: &str, mode: Mode) -> ParseResult {
    let normalized;
    let text = if text.contains("\r\n") {
        normalized = text.replace("\r\n", "\n");
        normalized.as_str()
    } else {
        text
    };

    let mut parser = Parser::new(mode);
    for (index, raw) in text.split('\n').enumerate() {
        parser.line(index as u32 + 1, raw);
    }
    parser.finish(source_name)
}

/// Canonical source text: two-space indentation, one space after each
/// colon, `\n` after every line, no comments.
pub fn pretty_print(policy: &PolicyFile) -> String {
    pretty_print_with(policy, IndentUnit::TwoSpaces)
}

pub fn pretty_print_with(policy: &PolicyFile, unit: IndentUnit) -> String {
    let one = unit.as_str();
    let two = one.repeat(2);
    let three = one.repeat(3);
    let four = one.repeat(4);
    let mut out = String::new();
    for block in &policy.blocks {
        match &block.agents {
            AgentSelector::AllAgents => out.push_str("User-agent: *\n"),
            AgentSelector::Named(names) => {
                out.push_str("User-agent:");
                for name in names {
                    out.push(' ');
                    out.push_str(name.as_str());
                }
                out.push('\n');
            }
        }
        for path in &block.paths {
            let _ = writeln!(out, "{one}Path: {} {}", path.path, path.file_type);
            for element in &path.elements {
                let _ = writeln!(out, "{two}Element: {}", element.name);
                for rule in &element.rules {
                    let _ = writeln!(out, "{three}{}: {}", rule.keyword(), rule.actions());
                    if let Rule::Guide(guide) = rule {
                        for guideline in &guide.guidelines {
                            let _ = writeln!(out, "{four}Lang: {}", guideline.language);
                            let _ = writeln!(out, "{four}Guideline: {}", guideline.text);
                        }
                    }
                }
            }
        }
    }
    out
}
