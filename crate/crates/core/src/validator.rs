//! Semantic checks on a parsed policy.
//!
//! | code | rule |
//! |------|------|
//! | V001 | html element name outside the supported CSS selector subset (error in strict mode, warning in lenient mode) |
//! | V002 | json/xml element name is not a dot-notation path |
//! | V003 | malformed language tag |
//! | V004 | action both disallowed and guided in one element (warning) |
//! | V005 | duplicate path within one user-agent block (warning) |
//! | V006 | duplicate element name within one path block (warning) |
//! | V007 | `Guide: *` next to another guide block in one element (warning) |
//! | V008 | agent named by more than one user-agent block (warning) |
//! | V009 | extension action outside the standard vocabulary (warning) |
//! | V010 | `%` not followed by two hex digits in a path (warning) |

use std::collections::{HashMap, HashSet};

use crate::diagnostic::{self, Diagnostic, Mode, Severity};
use crate::model::{ActionList, FileType, PolicyFile, Rule};
use crate::policy::normalize_path;
use crate::selector;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub diagnostics: Vec<Diagnostic>,
    pub is_clean: bool,
}

impl ValidationReport {
    fn new(mut diagnostics: Vec<Diagnostic>) -> Self {
        diagnostic::sort(&mut diagnostics);
        let is_clean = !diagnostic::has_errors(&diagnostics);
        ValidationReport {
            diagnostics,
            is_clean,
        }
    }

    pub fn codes(&self) -> Vec<&'static str> {
        self.diagnostics.iter().map(|d| d.code).collect()
    }
}

/// Do two action lists share at least one action?
fn overlapping(a: &ActionList, b: &ActionList) -> Vec<String> {
    match (a, b) {
        (ActionList::All, ActionList::All) => vec!["*".into()],
        (ActionList::All, ActionList::Named(list)) | (ActionList::Named(list), ActionList::All) => {
            list.iter().map(|a| a.to_string()).collect()
        }
        (ActionList::Named(x), ActionList::Named(y)) => x
            .iter()
            .filter(|a| y.contains(a))
            .map(|a| a.to_string())
            .collect(),
    }
}

fn bad_percent_escape(path: &str) -> bool {
    let bytes = path.as_bytes();
    bytes.iter().enumerate().any(|(i, &b)| {
        b == b'%'
            && !(bytes.get(i + 1).is_some_and(u8::is_ascii_hexdigit)
                && bytes.get(i + 2).is_some_and(u8::is_ascii_hexdigit))
    })
}

pub fn validate(policy: &PolicyFile, mode: Mode) -> ValidationReport {
    let mut out = Vec::new();
    let selector_severity = match mode {
        Mode::Strict => Severity::Error,
        Mode::Lenient => Severity::Warning,
    };

    let mut first_block_for_agent: HashMap<&str, usize> = HashMap::new();
    for (block_index, block) in policy.blocks.iter().enumerate() {
        for name in block.agents.names() {
            match first_block_for_agent.get(name.as_str()) {
                Some(&first) if first != block_index => out.push(Diagnostic::warning(
                    "V008",
                    format!(
                        "agent `{name}` is also named by the user-agent block on line {}; their rules are merged",
                        policy.blocks[first].span.line
                    ),
                    block.span,
                )),
                Some(_) => {}
                None => {
                    first_block_for_agent.insert(name.as_str(), block_index);
                }
            }
        }

        let mut seen_paths: HashSet<String> = HashSet::new();
        for path in &block.paths {
            let normalized = normalize_path(&path.path);
            if !seen_paths.insert(normalized.clone()) {
                out.push(Diagnostic::warning(
                    "V005",
                    format!("path `{normalized}` appears more than once in this user-agent block"),
                    path.span,
                ));
            }
            if bad_percent_escape(&path.path) {
                out.push(Diagnostic::warning(
                    "V010",
                    format!(
                        "path `{}` has a `%` that is not followed by two hex digits",
                        path.path
                    ),
                    path.span,
                ));
            }

            let mut seen_elements: HashSet<&str> = HashSet::new();
            for element in &path.elements {
                if !seen_elements.insert(&element.name) {
                    out.push(Diagnostic::warning(
                        "V006",
                        format!(
                            "element `{}` appears more than once under this path",
                            element.name
                        ),
                        element.span,
                    ));
                }

                if !element.is_wildcard() {
                    match path.file_type {
                        FileType::Html => {
                            if let Err(err) = selector::check_selector(&element.name) {
                                out.push(Diagnostic {
                                    severity: selector_severity,
                                    code: "V001",
                                    message: format!(
                                        "element `{}` is not a supported CSS selector: {err}",
                                        element.name
                                    ),
                                    span: element.span,
                                });
                            }
                        }
                        FileType::Json | FileType::Xml => {
                            if !selector::is_dot_path(&element.name) {
                                out.push(Diagnostic::error(
                                    "V002",
                                    format!(
                                        "element `{}` must be a dot-notation path such as `data.items` for {} content",
                                        element.name, path.file_type
                                    ),
                                    element.span,
                                ));
                            }
                        }
                    }
                }

                let guides: Vec<_> = element
                    .rules
                    .iter()
                    .filter_map(|r| match r {
                        Rule::Guide(g) => Some(g),
                        Rule::Disallow(_) => None,
                    })
                    .collect();
                for guide in &guides {
                    for guideline in &guide.guidelines {
                        if !guideline.language.is_well_formed() {
                            out.push(Diagnostic::error(
                                "V003",
                                format!(
                                    "language tag `{}` is not of the form en or en-US",
                                    guideline.language
                                ),
                                guide.span,
                            ));
                        }
                    }
                    let mut overlap: Vec<String> = Vec::new();
                    for rule in &element.rules {
                        if let Rule::Disallow(disallow) = rule {
                            for action in overlapping(&disallow.actions, &guide.actions) {
                                if !overlap.contains(&action) {
                                    overlap.push(action);
                                }
                            }
                        }
                    }
                    if !overlap.is_empty() {
                        out.push(Diagnostic::warning(
                            "V004",
                            format!(
                                "guided action(s) {} are also disallowed for element `{}`; the disallow takes precedence",
                                overlap.join(", "),
                                element.name
                            ),
                            guide.span,
                        ));
                    }
                    if guide.actions.is_all() && guides.len() > 1 {
                        out.push(Diagnostic::warning(
                            "V007",
                            format!(
                                "`Guide: *` overlaps the other guide blocks of element `{}`",
                                element.name
                            ),
                            guide.span,
                        ));
                    }
                }
            }
        }
    }

    for (action, span) in policy.extension_actions() {
        out.push(Diagnostic::warning(
            "V009",
            format!("`{action}` is not a standard action; agents may not recognize it"),
            span,
        ));
    }

    ValidationReport::new(out)
}
