//! Rule checking for programmatic enforcement.
//!
//! An agent about to act on content asks [`evaluate`] whether the action is
//! disallowed, allowed with guidelines, or simply allowed.
//!
//! Selection works like robots.txt: blocks that name the agent shadow the
//! `*` blocks entirely, and several blocks naming the same agent are merged.
//! Paths match exactly after [`normalize_path`]; elements match by name or
//! through an element block named `*`. A matching disallow beats any guide,
//! and anything not covered is allowed.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::model::{
    is_agent_name, ActionName, FileType, LanguageTag, PolicyFile, Rule, SourceSpan, UserAgentBlock,
};

/// Collapses repeated `/` and drops one trailing `/` (the root stays `/`).
/// No case folding and no percent-decoding.
pub fn normalize_path(path: &str) -> String {
    let mut out = String::with_capacity(path.len());
    let mut previous_slash = false;
    for c in path.chars() {
        if c == '/' {
            if previous_slash {
                continue;
            }
            previous_slash = true;
        } else {
            previous_slash = false;
        }
        out.push(c);
    }
    if out.len() > 1 && out.ends_with('/') {
        out.pop();
    }
    out
}

fn selected_block_indices(policy: &PolicyFile, agent: &str) -> Vec<usize> {
    let exact: Vec<usize> = policy
        .blocks
        .iter()
        .enumerate()
        .filter(|(_, b)| b.agents.names_agent(agent))
        .map(|(i, _)| i)
        .collect();
    if !exact.is_empty() {
        return exact;
    }
    policy
        .blocks
        .iter()
        .enumerate()
        .filter(|(_, b)| matches!(b.agents, crate::model::AgentSelector::AllAgents))
        .map(|(i, _)| i)
        .collect()
}

/// Blocks naming `agent` if there are any, otherwise the `*` blocks.
pub fn select_agent_blocks<'a>(policy: &'a PolicyFile, agent: &str) -> Vec<&'a UserAgentBlock> {
    selected_block_indices(policy, agent)
        .into_iter()
        .map(|i| &policy.blocks[i])
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("invalid agent name `{0}`")]
    InvalidAgent(String),
    #[error("query path `{0}` must start with `/`")]
    InvalidPath(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Query {
    pub agent: String,
    pub path: String,
    pub element: String,
    pub action: ActionName,
}

impl Query {
    pub fn new(
        agent: impl Into<String>,
        path: impl Into<String>,
        element: impl Into<String>,
        action: ActionName,
    ) -> Result<Self, QueryError> {
        let agent = agent.into();
        let path = path.into();
        if !is_agent_name(&agent) {
            return Err(QueryError::InvalidAgent(agent));
        }
        if !path.starts_with('/') {
            return Err(QueryError::InvalidPath(path));
        }
        Ok(Query {
            agent,
            path,
            element: element.into(),
            action,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecisionKind {
    Disallowed,
    Guided,
    Allowed,
}

impl DecisionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DecisionKind::Disallowed => "disallowed",
            DecisionKind::Guided => "guided",
            DecisionKind::Allowed => "allowed",
        }
    }
}

impl fmt::Display for DecisionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Indices of a rule inside a [`PolicyFile`]: block, path, element, rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RuleLocation {
    pub block: usize,
    pub path: usize,
    pub element: usize,
    pub rule: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RuleHit {
    pub location: RuleLocation,
    pub span: SourceSpan,
}

/// Which parts of the document produced a decision.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MatchTrace {
    pub agent_blocks: Vec<SourceSpan>,
    pub paths: Vec<SourceSpan>,
    pub elements: Vec<SourceSpan>,
    /// Non-empty exactly when the decision is not `Allowed`.
    pub deciding_rules: Vec<RuleHit>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub kind: DecisionKind,
    /// Filled only for `Guided`.
    pub guidelines: BTreeMap<LanguageTag, String>,
    pub trace: MatchTrace,
}

impl Decision {
    /// `{"decision": ..., "guidelines": {...}, "trace": [...]}`
    pub fn to_json(&self) -> Value {
        let guidelines: serde_json::Map<String, Value> = self
            .guidelines
            .iter()
            .map(|(lang, text)| (lang.to_string(), Value::String(text.clone())))
            .collect();
        let entry = |kind: &str, span: &SourceSpan| json!({"kind": kind, "line": span.line, "column": span.column, "length": span.length});
        let mut trace = Vec::new();
        trace.extend(
            self.trace
                .agent_blocks
                .iter()
                .map(|s| entry("user-agent", s)),
        );
        trace.extend(self.trace.paths.iter().map(|s| entry("path", s)));
        trace.extend(self.trace.elements.iter().map(|s| entry("element", s)));
        trace.extend(
            self.trace
                .deciding_rules
                .iter()
                .map(|h| entry("rule", &h.span)),
        );
        json!({
            "decision": self.kind.as_str(),
            "guidelines": guidelines,
            "trace": trace,
        })
    }
}

/// Answers one enforcement question. Total: every query gets a decision.
pub fn evaluate(policy: &PolicyFile, query: &Query) -> Decision {
    let wanted_path = normalize_path(&query.path);
    let mut trace = MatchTrace::default();
    let mut disallows = Vec::new();
    let mut guides = Vec::new();

    for b in selected_block_indices(policy, &query.agent) {
        let block = &policy.blocks[b];
        trace.agent_blocks.push(block.span);
        for (p, path) in block.paths.iter().enumerate() {
            if normalize_path(&path.path) != wanted_path {
                continue;
            }
            trace.paths.push(path.span);
            for (e, element) in path.elements.iter().enumerate() {
                if element.name != query.element && !element.is_wildcard() {
                    continue;
                }
                trace.elements.push(element.span);
                for (r, rule) in element.rules.iter().enumerate() {
                    if !rule.actions().contains(query.action) {
                        continue;
                    }
                    let hit = RuleHit {
                        location: RuleLocation {
                            block: b,
                            path: p,
                            element: e,
                            rule: r,
                        },
                        span: rule.span(),
                    };
                    match rule {
                        Rule::Disallow(_) => disallows.push(hit),
                        Rule::Guide(guide) => guides.push((hit, guide)),
                    }
                }
            }
        }
    }

    if !disallows.is_empty() {
        trace.deciding_rules = disallows;
        return Decision {
            kind: DecisionKind::Disallowed,
            guidelines: BTreeMap::new(),
            trace,
        };
    }
    if !guides.is_empty() {
        let mut guidelines = BTreeMap::new();
        for (_, guide) in &guides {
            for guideline in &guide.guidelines {
                guidelines.insert(guideline.language.clone(), guideline.text.clone());
            }
        }
        trace.deciding_rules = guides.into_iter().map(|(hit, _)| hit).collect();
        return Decision {
            kind: DecisionKind::Guided,
            guidelines,
            trace,
        };
    }
    Decision {
        kind: DecisionKind::Allowed,
        guidelines: BTreeMap::new(),
        trace,
    }
}

/// One rule as seen by a particular agent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApplicableRule<'a> {
    /// Normalized.
    pub path: String,
    pub file_type: FileType,
    pub element: &'a str,
    pub rule: &'a Rule,
    pub location: RuleLocation,
}

/// Every rule reachable by `agent`, flattened in source order.
pub fn applicable_rules<'a>(policy: &'a PolicyFile, agent: &str) -> Vec<ApplicableRule<'a>> {
    let mut out = Vec::new();
    for b in selected_block_indices(policy, agent) {
        for (p, path) in policy.blocks[b].paths.iter().enumerate() {
            let normalized = normalize_path(&path.path);
            for (e, element) in path.elements.iter().enumerate() {
                for (r, rule) in element.rules.iter().enumerate() {
                    out.push(ApplicableRule {
                        path: normalized.clone(),
                        file_type: path.file_type,
                        element: &element.name,
                        rule,
                        location: RuleLocation {
                            block: b,
                            path: p,
                            element: e,
                            rule: r,
                        },
                    });
                }
            }
        }
    }
    out
}
