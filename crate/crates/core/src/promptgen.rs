//! Plain-text rendering of an agent's rules for prompt-level enforcement.
//!
//! The wording is fixed so that rendered prompts can be diffed:
//!
//! ```text
//! You must obey the following content rules for this website.
//! For path /articles/today.html (html):
//! - element p:
//!   - you must not perform: Train, Summarize
//!   - when you Cite, follow: Link to the article.
//! ```

use crate::model::{Action, ActionList, FileType, GuideRule, LanguageTag, PolicyFile, Rule};
use crate::policy::applicable_rules;

pub const HEADER: &str = "You must obey the following content rules for this website.";
pub const NO_RULES: &str = "No content rules declared for this agent.";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PromptRequest {
    pub agent: String,
    pub preferred_language: LanguageTag,
    /// Use the first declared guideline when none is in the preferred language.
    pub fallback: bool,
}

#[derive(Default)]
struct ElementRules<'a> {
    name: &'a str,
    disallow_all: bool,
    disallowed: Vec<&'a Action>,
    guides: Vec<&'a GuideRule>,
}

struct PathRules<'a> {
    path: String,
    file_type: FileType,
    elements: Vec<ElementRules<'a>>,
}

fn group<'a>(policy: &'a PolicyFile, agent: &str) -> Vec<PathRules<'a>> {
    let mut paths: Vec<PathRules<'a>> = Vec::new();
    for applicable in applicable_rules(policy, agent) {
        let index = match paths
            .iter()
            .position(|p| p.path == applicable.path && p.file_type == applicable.file_type)
        {
            Some(i) => i,
            None => {
                paths.push(PathRules {
                    path: applicable.path.clone(),
                    file_type: applicable.file_type,
                    elements: Vec::new(),
                });
                paths.len() - 1
            }
        };
        let elements = &mut paths[index].elements;
        let element = match elements.iter().position(|e| e.name == applicable.element) {
            Some(i) => &mut elements[i],
            None => {
                elements.push(ElementRules {
                    name: applicable.element,
                    ..ElementRules::default()
                });
                elements.last_mut().expect("just pushed")
            }
        };
        match applicable.rule {
            Rule::Disallow(rule) => match &rule.actions {
                ActionList::All => element.disallow_all = true,
                ActionList::Named(actions) => {
                    for action in actions {
                        if !element.disallowed.contains(&action) {
                            element.disallowed.push(action);
                        }
                    }
                }
            },
            Rule::Guide(rule) => element.guides.push(rule),
        }
    }
    paths
}

fn guideline_for<'a>(guide: &'a GuideRule, request: &PromptRequest) -> Result<&'a str, ()> {
    guide
        .guidelines
        .iter()
        .find(|g| g.language == request.preferred_language)
        .or_else(|| request.fallback.then(|| guide.guidelines.first()).flatten())
        .map(|g| g.text.as_str())
        .ok_or(())
}

fn element_lines(element: &ElementRules<'_>, request: &PromptRequest) -> Vec<String> {
    let mut lines = Vec::new();
    if element.disallow_all {
        lines.push("  - you must not perform: any action".to_string());
    } else if !element.disallowed.is_empty() {
        let names: Vec<&str> = element.disallowed.iter().map(|a| a.as_str()).collect();
        lines.push(format!("  - you must not perform: {}", names.join(", ")));
    }
    if element.disallow_all {
        return lines;
    }

    for guide in &element.guides {
        let labels: Vec<String> = match &guide.actions {
            ActionList::All => vec!["perform any action".to_string()],
            ActionList::Named(actions) => actions
                .iter()
                .filter(|a| !element.disallowed.contains(a))
                .map(|a| a.to_string())
                .collect(),
        };
        if labels.is_empty() {
            continue;
        }
        let instruction = match guideline_for(guide, request) {
            Ok(text) => text.to_string(),
            Err(()) => format!("(no guideline available in {})", request.preferred_language),
        };
        for label in labels {
            lines.push(format!("  - when you {label}, follow: {instruction}"));
        }
    }
    lines
}

/// Renders the rules that apply to `request.agent`. Lines are separated by
/// `\n` with no trailing newline. Guideline text is embedded unchanged.
pub fn render_prompt(policy: &PolicyFile, request: &PromptRequest) -> String {
    let mut lines = vec![HEADER.to_string()];
    for path in group(policy, &request.agent) {
        let mut body = Vec::new();
        for element in &path.elements {
            let rules = element_lines(element, request);
            if !rules.is_empty() {
                body.push(format!("- element {}:", element.name));
                body.extend(rules);
            }
        }
        if !body.is_empty() {
            lines.push(format!("For path {} ({}):", path.path, path.file_type));
            lines.extend(body);
        }
    }
    if lines.len() == 1 {
        return NO_RULES.to_string();
    }
    lines.join("\n")
}
