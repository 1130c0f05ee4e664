//! Triple construction from the single-pop machine.
//!
//! A nonterminal `[p X q]` derives the input read while the machine goes
//! from control `p` with `X` on top to control `q` with `X` just popped.
//! Only triples reachable from the initial configuration are explored, and a
//! production is emitted only once every nonterminal on its right is known
//! to be realizable, so all nonterminals of the result are generating.

use std::collections::{HashMap, HashSet, VecDeque};

use super::grammar::{GSym, Grammar, NonterminalLabel, NtId, Production};
use super::{Action, CollapsePda, Control, StackSymbol, Terminal};
use crate::error::PreconditionError;

type Call = (Control, StackSymbol);

#[derive(Debug, Clone, Copy)]
enum Cont {
    /// `p X` moved to `to` keeping `X`; waiting on `(to, X)`.
    Keep { p: Control, x: StackSymbol, input: Option<Terminal>, to: Control },
    /// `p X` moved to `to` pushing `y`; waiting on `(to, y)`.
    PushFirst { p: Control, x: StackSymbol, input: Option<Terminal>, to: Control, y: StackSymbol },
    /// `y` has been popped into `r`; waiting on `(r, X)`.
    PushSecond { p: Control, x: StackSymbol, input: Option<Terminal>, to: Control, y: StackSymbol, r: Control },
}

enum Event {
    Call(Call),
    Fire(Cont, Control),
}

struct Builder<'p, 'a> {
    pda: &'p CollapsePda<'a>,
    called: HashSet<Call>,
    summaries: HashMap<Call, Vec<Control>>,
    waiting: HashMap<Call, Vec<Cont>>,
    events: VecDeque<Event>,
    ids: HashMap<(Control, StackSymbol, Control), NtId>,
    labels: Vec<NonterminalLabel>,
    productions: HashSet<Production>,
    order: Vec<Production>,
}

impl Builder<'_, '_> {
    fn nt(&mut self, p: Control, x: StackSymbol, q: Control) -> NtId {
        let next = self.labels.len();
        *self.ids.entry((p, x, q)).or_insert_with(|| {
            self.labels.push(NonterminalLabel::Triple(p, x, q));
            next
        })
    }

    fn emit(&mut self, lhs: NtId, input: Option<Terminal>, rest: &[NtId]) {
        let rhs: Vec<GSym> = input
            .map(GSym::T)
            .into_iter()
            .chain(rest.iter().map(|&n| GSym::N(n)))
            .collect();
        let prod = Production { lhs, rhs };
        if self.productions.insert(prod.clone()) {
            self.order.push(prod);
        }
    }

    fn summary(&mut self, call: Call, q: Control, input: Option<Terminal>, rest: &[NtId]) {
        let lhs = self.nt(call.0, call.1, q);
        self.emit(lhs, input, rest);
        let known = self.summaries.entry(call).or_default();
        if !known.contains(&q) {
            known.push(q);
            for &c in self.waiting.get(&call).into_iter().flatten() {
                self.events.push_back(Event::Fire(c, q));
            }
        }
    }

    fn wait(&mut self, callee: Call, cont: Cont) {
        self.waiting.entry(callee).or_default().push(cont);
        self.events.push_back(Event::Call(callee));
        for &q in self.summaries.get(&callee).into_iter().flatten() {
            self.events.push_back(Event::Fire(cont, q));
        }
    }

    fn expand(&mut self, (p, x): Call) -> Result<(), PreconditionError> {
        if !self.called.insert((p, x)) {
            return Ok(());
        }
        for mv in self.pda.moves(p, x)? {
            match mv.action {
                Action::Pop => self.summary((p, x), mv.to, mv.input, &[]),
                Action::Keep => self.wait((mv.to, x), Cont::Keep { p, x, input: mv.input, to: mv.to }),
                Action::Push(y) => self.wait(
                    (mv.to, y),
                    Cont::PushFirst { p, x, input: mv.input, to: mv.to, y },
                ),
            }
        }
        Ok(())
    }

    fn fire(&mut self, cont: Cont, q: Control) {
        match cont {
            Cont::Keep { p, x, input, to } => {
                let inner = self.nt(to, x, q);
                self.summary((p, x), q, input, &[inner]);
            }
            Cont::PushFirst { p, x, input, to, y } => {
                self.wait((q, x), Cont::PushSecond { p, x, input, to, y, r: q });
            }
            Cont::PushSecond { p, x, input, to, y, r } => {
                let first = self.nt(to, y, r);
                let second = self.nt(r, x, q);
                self.summary((p, x), q, input, &[first, second]);
            }
        }
    }
}

pub(super) fn pda_to_grammar(pda: &CollapsePda<'_>) -> Result<Grammar, PreconditionError> {
    let mut b = Builder {
        pda,
        called: HashSet::new(),
        summaries: HashMap::new(),
        waiting: HashMap::new(),
        events: VecDeque::new(),
        ids: HashMap::new(),
        labels: vec![NonterminalLabel::Start],
        productions: HashSet::new(),
        order: Vec::new(),
    };
    let root = (pda.initial_control(), StackSymbol::Bottom);
    b.events.push_back(Event::Call(root));
    while let Some(event) = b.events.pop_front() {
        match event {
            Event::Call(call) => b.expand(call)?,
            Event::Fire(cont, q) => b.fire(cont, q),
        }
    }
    if b.summaries.get(&root).is_some_and(|qs| qs.contains(&Control::Accept)) {
        let top = b.nt(root.0, root.1, Control::Accept);
        b.emit(0, None, &[top]);
    }
    Ok(Grammar::new(b.labels, b.order, 0))
}
