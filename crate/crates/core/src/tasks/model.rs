use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use core::fmt;
use core::str::FromStr;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TaskError {
    #[error("invalid date --{month:02}-{day:02}")]
    InvalidDate { month: u8, day: u8 },
    #[error("task {0} has an empty name")]
    EmptyName(TaskId),
    #[error("task {0} is both upserted and deleted")]
    UpsertAndDelete(TaskId),
    #[error("task {id} does not belong in {component}")]
    WrongComponent { id: TaskId, component: &'static str },
    #[error("task {0} appears in two components")]
    Overlap(TaskId),
}

/// An opaque task identifier such as `001`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TaskId(pub String);

impl TaskId {
    pub fn new(id: impl Into<String>) -> Self {
        TaskId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for TaskId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for TaskId {
    fn from(s: &str) -> Self {
        TaskId(s.into())
    }
}

/// A calendar day without a year, compared by equality only.
///
/// Displays in the ISO 8601 yearless form `--MM-DD`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Date {
    month: u8,
    day: u8,
}

const MONTHS: [&str; 12] = ["Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"];
const DAYS: [u8; 12] = [31, 29, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31];

impl Date {
    /// February 29 is accepted since no year is known.
    pub fn new(month: u8, day: u8) -> Result<Date, TaskError> {
        if (1..=12).contains(&month) && day >= 1 && day <= DAYS[month as usize - 1] {
            Ok(Date { month, day })
        } else {
            Err(TaskError::InvalidDate { month, day })
        }
    }

    pub fn month(self) -> u8 {
        self.month
    }

    pub fn day(self) -> u8 {
        self.day
    }

    /// `Apr 1` style.
    pub fn short(self) -> String {
        alloc::format!("{} {}", MONTHS[self.month as usize - 1], self.day)
    }
}

impl fmt::Display for Date {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "--{:02}-{:02}", self.month, self.day)
    }
}

/// A date string that is neither `--MM-DD` nor `Apr 1`.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("cannot read `{0}` as a date; expected --MM-DD or a form like Apr 1")]
pub struct ParseDateError(pub String);

impl FromStr for Date {
    type Err = ParseDateError;

    /// Accepts `--04-01` and `Apr 1`.
    fn from_str(s: &str) -> Result<Date, ParseDateError> {
        let bad = || ParseDateError(s.into());
        let (month, day) = if let Some(md) = s.strip_prefix("--") {
            let (m, d) = md.split_once('-').ok_or_else(bad)?;
            if m.len() != 2 || d.len() != 2 {
                return Err(bad());
            }
            (m.parse::<u8>().map_err(|_| bad())?, d.parse::<u8>().map_err(|_| bad())?)
        } else {
            let (m, d) = s.split_once(' ').ok_or_else(bad)?;
            let month = MONTHS.iter().position(|x| x.eq_ignore_ascii_case(m)).ok_or_else(bad)?;
            (month as u8 + 1, d.trim().parse::<u8>().map_err(|_| bad())?)
        };
        Date::new(month, day).map_err(|_| bad())
    }
}

/// `(done, name, due)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TaskRecord {
    pub done: bool,
    pub name: String,
    pub due: Date,
}

impl TaskRecord {
    pub fn new(done: bool, name: impl Into<String>, due: Date) -> TaskRecord {
        TaskRecord { done, name: name.into(), due }
    }
}

/// A finite map from ids to records, `ID ⇀ (Bool × String × Date)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tasks(BTreeMap<TaskId, TaskRecord>);

impl Tasks {
    pub fn new() -> Tasks {
        Tasks(BTreeMap::new())
    }

    /// Builds a table, rejecting empty names. Later duplicates win.
    pub fn from_records(records: impl IntoIterator<Item = (TaskId, TaskRecord)>) -> Result<Tasks, TaskError> {
        let mut t = Tasks::new();
        for (id, r) in records {
            t.insert(id, r)?;
        }
        Ok(t)
    }

    pub fn insert(&mut self, id: TaskId, r: TaskRecord) -> Result<(), TaskError> {
        if r.name.is_empty() {
            return Err(TaskError::EmptyName(id));
        }
        self.0.insert(id, r);
        Ok(())
    }

    pub fn get(&self, id: &TaskId) -> Option<&TaskRecord> {
        self.0.get(id)
    }

    pub fn contains(&self, id: &TaskId) -> bool {
        self.0.contains_key(id)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Entries in ascending id order.
    pub fn iter(&self) -> impl Iterator<Item = (&TaskId, &TaskRecord)> {
        self.0.iter()
    }

    pub fn ids(&self) -> BTreeSet<TaskId> {
        self.0.keys().cloned().collect()
    }

    /// `t ◁ a`: entries of `a` replace or extend those of `t`.
    pub fn upsert(&self, a: &Tasks) -> Tasks {
        let mut out = self.0.clone();
        out.extend(a.0.iter().map(|(k, v)| (k.clone(), v.clone())));
        Tasks(out)
    }

    /// The entries whose record satisfies `pred`.
    pub fn filter(&self, pred: impl Fn(&TaskRecord) -> bool) -> Tasks {
        Tasks(self.0.iter().filter(|(_, r)| pred(r)).map(|(k, v)| (k.clone(), v.clone())).collect())
    }

    /// Removes the given ids.
    pub fn without(&self, ids: &BTreeSet<TaskId>) -> Tasks {
        Tasks(self.0.iter().filter(|(k, _)| !ids.contains(*k)).map(|(k, v)| (k.clone(), v.clone())).collect())
    }

    /// `self ⊆ other` as sets of entries.
    pub fn is_submap_of(&self, other: &Tasks) -> bool {
        self.0.iter().all(|(k, v)| other.0.get(k) == Some(v))
    }

    /// `self ∪ other` when the two agree on shared ids.
    pub fn union(&self, other: &Tasks) -> Option<Tasks> {
        let mut out = self.0.clone();
        for (k, v) in &other.0 {
            match out.get(k) {
                Some(w) if w != v => return None,
                _ => {
                    out.insert(k.clone(), v.clone());
                }
            }
        }
        Some(Tasks(out))
    }

    /// No id of `ids` is in the domain.
    pub fn disjoint_from(&self, ids: &BTreeSet<TaskId>) -> bool {
        ids.iter().all(|k| !self.0.contains_key(k))
    }
}

impl fmt::Display for TaskRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let done = if self.done { "True" } else { "False" };
        write!(f, "({done}, {}, {})", self.name, self.due.short())
    }
}

impl fmt::Display for Tasks {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, r)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}↦{r}")?;
        }
        f.write_str("}")
    }
}

/// Renders a set of ids as `{001, 002}`.
pub fn show_ids(ids: &BTreeSet<TaskId>) -> String {
    let mut out = String::from("{");
    for (i, k) in ids.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(k.as_str());
    }
    out.push('}');
    out
}

impl FromIterator<(TaskId, TaskRecord)> for Tasks {
    /// Collects without validation; use [`Tasks::from_records`] for input.
    fn from_iter<I: IntoIterator<Item = (TaskId, TaskRecord)>>(iter: I) -> Self {
        Tasks(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dates_parse_in_both_forms() {
        assert_eq!("--04-01".parse(), Ok(Date::new(4, 1).unwrap()));
        assert_eq!("Apr 1".parse(), Ok(Date::new(4, 1).unwrap()));
        assert_eq!("dec 31".parse(), Ok(Date::new(12, 31).unwrap()));
        for s in ["--4-1", "--04-31", "Apr", "Foo 1", "2024-04-01", "--02-30"] {
            assert!(s.parse::<Date>().is_err(), "{s}");
        }
    }

    fn d(m: u8, day: u8) -> Date {
        Date::new(m, day).unwrap()
    }

    #[test]
    fn dates_are_validated_and_printed_yearless() {
        assert_eq!(d(4, 1).to_string(), "--04-01");
        assert_eq!(d(4, 1).short(), "Apr 1");
        assert!(Date::new(2, 29).is_ok());
        assert!(Date::new(4, 31).is_err());
        assert!(Date::new(13, 1).is_err());
    }

    #[test]
    fn upsert_replaces_and_extends() {
        let t: Tasks = [("1".into(), TaskRecord::new(false, "a", d(1, 1)))].into_iter().collect();
        assert_eq!(t.upsert(&Tasks::new()), t);
        let a: Tasks = [("1".into(), TaskRecord::new(true, "b", d(1, 2))), ("2".into(), TaskRecord::new(false, "c", d(1, 1)))]
            .into_iter()
            .collect();
        let u = t.upsert(&a);
        assert_eq!(u, a);
        assert!(t.union(&a).is_none());
        assert!(Tasks::from_records([(TaskId::from("x"), TaskRecord::new(false, "", d(1, 1)))]).is_err());
    }
}
