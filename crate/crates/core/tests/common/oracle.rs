//! Brute-force reference for policy evaluation: flatten every rule in the
//! document, then scan the flat list for each query.

use std::collections::BTreeMap;

use aitxt::{ActionList, ActionName, AgentSelector, PolicyFile, Rule};

/// Expected outcome of one query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expected {
    Disallowed,
    Guided(BTreeMap<String, String>),
    Allowed,
}

struct FlatRule<'a> {
    wildcard_agent: bool,
    agents: Vec<&'a str>,
    path: String,
    element: &'a str,
    rule: &'a Rule,
}

/// Path equality ignores empty segments, so `//` runs and a trailing `/`
/// do not matter.
pub fn canonical_path(path: &str) -> String {
    let segments: Vec<&str> = path.split('/').filter(|s| !s.is_empty()).collect();
    format!("/{}", segments.join("/"))
}

fn flatten(policy: &PolicyFile) -> Vec<FlatRule<'_>> {
    let mut flat = Vec::new();
    for block in &policy.blocks {
        let (wildcard_agent, agents) = match &block.agents {
            AgentSelector::AllAgents => (true, Vec::new()),
            AgentSelector::Named(names) => (false, names.iter().map(|n| n.as_str()).collect()),
        };
        for path in &block.paths {
            for element in &path.elements {
                for rule in &element.rules {
                    flat.push(FlatRule {
                        wildcard_agent,
                        agents: agents.clone(),
                        path: canonical_path(&path.path),
                        element: &element.name,
                        rule,
                    });
                }
            }
        }
    }
    flat
}

fn covers(list: &ActionList, action: ActionName) -> bool {
    match list {
        ActionList::All => true,
        ActionList::Named(actions) => actions.iter().any(|a| a.as_str() == action.as_str()),
    }
}

/// A policy flattened once, queried many times.
pub struct Oracle<'a> {
    flat: Vec<FlatRule<'a>>,
}

impl<'a> Oracle<'a> {
    pub fn new(policy: &'a PolicyFile) -> Self {
        Oracle {
            flat: flatten(policy),
        }
    }

    pub fn expected(&self, agent: &str, path: &str, element: &str, action: ActionName) -> Expected {
        let agent_is_named = self.flat.iter().any(|r| r.agents.contains(&agent));
        let path = canonical_path(path);
        let relevant: Vec<&FlatRule<'_>> = self
            .flat
            .iter()
            .filter(|r| {
                if agent_is_named {
                    r.agents.contains(&agent)
                } else {
                    r.wildcard_agent
                }
            })
            .filter(|r| r.path == path)
            .filter(|r| r.element == element || r.element == "*")
            .filter(|r| covers(r.rule.actions(), action))
            .collect();

        if relevant.iter().any(|r| matches!(r.rule, Rule::Disallow(_))) {
            return Expected::Disallowed;
        }
        let mut guidelines = BTreeMap::new();
        let mut guided = false;
        for r in &relevant {
            if let Rule::Guide(guide) = r.rule {
                guided = true;
                for g in &guide.guidelines {
                    guidelines.insert(g.language.as_str().to_string(), g.text.clone());
                }
            }
        }
        if guided {
            Expected::Guided(guidelines)
        } else {
            Expected::Allowed
        }
    }
}

/// Every agent, path and element mentioned by the policy plus one fresh
/// value of each, with all path spellings and their canonical forms.
pub struct Grid {
    pub agents: Vec<String>,
    pub paths: Vec<String>,
    pub elements: Vec<String>,
}

pub fn grid(policy: &PolicyFile) -> Grid {
    let mut agents = vec!["FreshBot".to_string()];
    let mut paths = vec!["/fresh/page.html".to_string()];
    let mut elements = vec!["fresh".to_string()];
    for block in &policy.blocks {
        for name in block.agents.names() {
            agents.push(name.as_str().to_string());
        }
        for path in &block.paths {
            paths.push(path.path.clone());
            paths.push(canonical_path(&path.path));
            paths.push(format!("{}/", canonical_path(&path.path)));
            for element in &path.elements {
                elements.push(element.name.clone());
            }
        }
    }
    for list in [&mut agents, &mut paths, &mut elements] {
        list.sort();
        list.dedup();
    }
    Grid {
        agents,
        paths,
        elements,
    }
}
