//! TOML documents for task tables and view edits.
//!
//! A task table:
//!
//! ```toml
//! kind = "tasks"
//!
//! [[task]]
//! id = "001"
//! done = false
//! name = "Buy milk"
//! due = "--04-02"
//! ```
//!
//! An edit of one view lists `delete`d ids and full records to `upsert`,
//! `complete` or `postpone`:
//!
//! ```toml
//! kind = "delta"
//! delete = ["002"]
//!
//! [[upsert]]
//! id = "003"
//! done = false
//! name = "Stretch"
//! due = "--04-01"
//! ```
//!
//! Records are written sorted by id, so the output for a value is byte-stable.

use pslens_core::tasks::{
    Date, Delta, DtState, ParseDateError, SplitDelta, SplitState, TaskError, TaskId, TaskRecord, Tasks, ViewPredicate,
};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{0}")]
    Toml(#[from] toml::de::Error),
    #[error("`kind` must be \"tasks\" or \"delta\"")]
    UnknownKind,
    #[error("a tasks document has no `{0}` list")]
    StrayList(&'static str),
    #[error("a delta document has no `task` list")]
    StrayTasks,
    #[error("task {0} is listed twice")]
    Duplicate(TaskId),
    #[error(transparent)]
    Date(#[from] ParseDateError),
    #[error(transparent)]
    Task(#[from] TaskError),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    id: String,
    done: bool,
    name: String,
    due: String,
}

#[derive(Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct Doc {
    kind: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    delete: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    task: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    upsert: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    complete: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    postpone: Vec<Entry>,
}

/// The four lists of an edit. An id occurs in at most one of them.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EditLists {
    pub upsert: Tasks,
    pub complete: Tasks,
    pub postpone: Tasks,
    pub delete: BTreeSet<TaskId>,
}

impl EditLists {
    pub fn is_empty(&self) -> bool {
        self.upsert.is_empty() && self.complete.is_empty() && self.postpone.is_empty() && self.delete.is_empty()
    }

    /// Every id mentioned by the edit.
    pub fn ids(&self) -> BTreeSet<TaskId> {
        let mut ids = self.upsert.ids();
        ids.extend(self.complete.ids());
        ids.extend(self.postpone.ids());
        ids.extend(self.delete.iter().cloned());
        ids
    }

    /// Drops `id` from every list, so that a later request replaces an
    /// earlier one.
    pub fn forget(&mut self, id: &TaskId) {
        let one: BTreeSet<TaskId> = [id.clone()].into();
        self.upsert = self.upsert.without(&one);
        self.complete = self.complete.without(&one);
        self.postpone = self.postpone.without(&one);
        self.delete.remove(id);
    }

    /// Applies `later` on top of `self`, request by request.
    pub fn extend(&mut self, later: &EditLists) {
        for id in later.ids() {
            self.forget(&id);
        }
        self.upsert = self.upsert.upsert(&later.upsert);
        self.complete = self.complete.upsert(&later.complete);
        self.postpone = self.postpone.upsert(&later.postpone);
        self.delete.extend(later.delete.iter().cloned());
    }

    /// `(A, D)` with every record in `A`.
    pub fn to_delta(&self) -> Result<Delta, TaskError> {
        let add = self.upsert.upsert(&self.complete).upsert(&self.postpone);
        Delta::new(add, self.delete.clone())
    }

    /// `(A, C, D)` or `(A, Po, D)`: the records the predicate hides go to
    /// the middle component, which must be `complete` for the ongoing view
    /// and `postpone` for a due-day view.
    pub fn to_split(&self, pred: ViewPredicate) -> Result<SplitDelta, TaskError> {
        let (visible, hidden) = match pred {
            ViewPredicate::Ongoing => (self.upsert.upsert(&self.postpone), self.complete.clone()),
            ViewPredicate::DueOn(_) => (self.upsert.upsert(&self.complete), self.postpone.clone()),
        };
        SplitDelta::new(pred, visible, hidden, self.delete.clone())
    }

    pub fn from_delta(d: &Delta) -> EditLists {
        EditLists { upsert: d.add().clone(), delete: d.del().clone(), ..EditLists::default() }
    }

    pub fn from_split(pred: ViewPredicate, d: &SplitDelta) -> EditLists {
        let mut e = EditLists { upsert: d.visible().clone(), delete: d.del().clone(), ..EditLists::default() };
        match pred {
            ViewPredicate::Ongoing => e.complete = d.hidden().clone(),
            ViewPredicate::DueOn(_) => e.postpone = d.hidden().clone(),
        }
        e
    }
}

/// A parsed document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Tasks(Tasks),
    Edit(EditLists),
}

pub fn parse_document(text: &str) -> Result<Document, FormatError> {
    let doc: Doc = toml::from_str(text)?;
    match doc.kind.as_str() {
        "tasks" => {
            for (name, list) in [("upsert", &doc.upsert), ("complete", &doc.complete), ("postpone", &doc.postpone)] {
                if !list.is_empty() {
                    return Err(FormatError::StrayList(name));
                }
            }
            if !doc.delete.is_empty() {
                return Err(FormatError::StrayList("delete"));
            }
            let mut seen = BTreeSet::new();
            Ok(Document::Tasks(table(&doc.task, &mut seen)?))
        }
        "delta" => {
            if !doc.task.is_empty() {
                return Err(FormatError::StrayTasks);
            }
            let mut seen = BTreeSet::new();
            let upsert = table(&doc.upsert, &mut seen)?;
            let complete = table(&doc.complete, &mut seen)?;
            let postpone = table(&doc.postpone, &mut seen)?;
            let mut delete = BTreeSet::new();
            for k in &doc.delete {
                let id = TaskId::from(k.as_str());
                if !seen.insert(id.clone()) {
                    return Err(FormatError::Duplicate(id));
                }
                delete.insert(id);
            }
            Ok(Document::Edit(EditLists { upsert, complete, postpone, delete }))
        }
        _ => Err(FormatError::UnknownKind),
    }
}

fn table(entries: &[Entry], seen: &mut BTreeSet<TaskId>) -> Result<Tasks, FormatError> {
    let mut t = Tasks::new();
    for e in entries {
        let id = TaskId::from(e.id.as_str());
        if !seen.insert(id.clone()) {
            return Err(FormatError::Duplicate(id));
        }
        let due: Date = e.due.parse()?;
        t.insert(id, TaskRecord::new(e.done, e.name.as_str(), due))?;
    }
    Ok(t)
}

fn entries(t: &Tasks) -> Vec<Entry> {
    t.iter()
        .map(|(k, r)| Entry { id: k.to_string(), done: r.done, name: r.name.clone(), due: r.due.to_string() })
        .collect()
}

fn render(doc: &Doc) -> String {
    toml::to_string(doc).expect("documents are plain tables")
}

pub fn write_tasks(t: &Tasks) -> String {
    render(&Doc { kind: "tasks".into(), task: entries(t), ..Doc::default() })
}

pub fn write_edit(e: &EditLists) -> String {
    render(&Doc {
        kind: "delta".into(),
        delete: e.delete.iter().map(|k| k.to_string()).collect(),
        upsert: entries(&e.upsert),
        complete: entries(&e.complete),
        postpone: entries(&e.postpone),
        ..Doc::default()
    })
}

/// A `DT` element as a tasks or delta document.
pub fn write_dt(v: &DtState) -> String {
    match v {
        DtState::Proper(t) => write_tasks(t),
        DtState::Delta(d) => write_edit(&EditLists::from_delta(d)),
    }
}

/// A `DT_OG` or `DT_DT` element as a tasks or delta document.
pub fn write_split(pred: ViewPredicate, v: &SplitState) -> String {
    match v {
        SplitState::Proper(t) => write_tasks(t),
        SplitState::Delta(d) => write_edit(&EditLists::from_split(pred, d)),
    }
}
