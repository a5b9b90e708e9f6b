//! Memoized suspensions and infinite streams.
//!
//! This is the substrate every other module stands on: write-once lazy cells
//! with black-hole detection, and cons streams with no end-of-stream state.
//! Self-referential definitions go through [`Stream::fix`], which turns a
//! fixed-point equation into a demand-driven algorithm and reports
//! [`Error::NonProductive`] instead of hanging when the definition is not
//! productive.
//!
//! Streams are single-context: `Rc`/`RefCell` inside, `Clone` is a cheap
//! handle copy, already-forced prefixes are immutable.

use std::cell::RefCell;
use std::rc::Rc;

use crate::error::{Error, Result};

enum State<T> {
    Thunk(Box<dyn FnOnce() -> Result<T>>),
    InProgress,
    Ready(T),
    Failed(Error),
}

/// A write-once memoized suspension.
///
/// Forcing runs the suspension at most once; a second force returns the
/// memoized value (or the memoized error). Forcing a cell that is already
/// being forced is the operational signature of a non-productive definition
/// and yields [`Error::NonProductive`].
pub struct Lazy<T> {
    state: RefCell<State<T>>,
}

impl<T: Clone> Lazy<T> {
    pub fn new(f: impl FnOnce() -> Result<T> + 'static) -> Self {
        Lazy {
            state: RefCell::new(State::Thunk(Box::new(f))),
        }
    }

    pub fn ready(v: T) -> Self {
        Lazy {
            state: RefCell::new(State::Ready(v)),
        }
    }

    pub fn force(&self) -> Result<T> {
        // Fast path: already evaluated.
        {
            let st = self.state.borrow();
            match &*st {
                State::Ready(v) => return Ok(v.clone()),
                State::Failed(e) => return Err(e.clone()),
                State::InProgress => return Err(Error::NonProductive),
                State::Thunk(_) => {}
            }
        }
        let thunk = match std::mem::replace(&mut *self.state.borrow_mut(), State::InProgress) {
            State::Thunk(f) => f,
            _ => unreachable!(),
        };
        let outcome = thunk();
        let mut st = self.state.borrow_mut();
        match outcome {
            Ok(v) => {
                *st = State::Ready(v.clone());
                Ok(v)
            }
            Err(e) => {
                *st = State::Failed(e.clone());
                Err(e)
            }
        }
    }
}

struct Cell<T: Clone + 'static> {
    head: Lazy<T>,
    tail: Lazy<Stream<T>>,
}

// Dropping a long forced chain cell-by-cell through the default recursive
// drop overflows the stack; walk the uniquely-owned suffix iteratively
// instead.
impl<T: Clone + 'static> Drop for Cell<T> {
    fn drop(&mut self) {
        let mut st = self.tail.state.replace(State::InProgress);
        loop {
            let stream = match st {
                State::Ready(s) => s,
                _ => break,
            };
            let lazy = match Rc::try_unwrap(stream.0) {
                Ok(l) => l,
                Err(_) => break,
            };
            let cell_rc = match lazy.state.into_inner() {
                State::Ready(rc) => rc,
                _ => break,
            };
            match Rc::try_unwrap(cell_rc) {
                Ok(cell) => st = cell.tail.state.replace(State::InProgress),
                Err(_) => break,
            }
        }
    }
}

/// A logically infinite stream: a lazily linked chain of [`Lazy`] cells.
///
/// There is no end-of-stream state. The only equality notion is element-wise
/// comparison of a [`take`](Stream::take)n prefix.
pub struct Stream<T: Clone + 'static>(Rc<Lazy<Rc<Cell<T>>>>);

impl<T: Clone + 'static> Clone for Stream<T> {
    fn clone(&self) -> Self {
        Stream(Rc::clone(&self.0))
    }
}

impl<T: Clone + 'static> Stream<T> {
    /// Cons from two independent suspensions; neither is run here.
    pub fn cons_lazy(
        head: impl FnOnce() -> Result<T> + 'static,
        tail: impl FnOnce() -> Result<Stream<T>> + 'static,
    ) -> Self {
        Stream(Rc::new(Lazy::ready(Rc::new(Cell {
            head: Lazy::new(head),
            tail: Lazy::new(tail),
        }))))
    }

    /// Cons with an already-computed head.
    pub fn cons(head: T, tail: Stream<T>) -> Self {
        Stream(Rc::new(Lazy::ready(Rc::new(Cell {
            head: Lazy::ready(head),
            tail: Lazy::ready(tail),
        }))))
    }

    /// A stream that is not even structurally decided yet: forcing the head
    /// or the tail first runs `f` to obtain the real stream.
    pub fn defer(f: impl FnOnce() -> Result<Stream<T>> + 'static) -> Self {
        Stream(Rc::new(Lazy::new(move || f()?.cell())))
    }

    fn cell(&self) -> Result<Rc<Cell<T>>> {
        self.0.force()
    }

    pub fn head(&self) -> Result<T> {
        self.cell()?.head.force()
    }

    pub fn tail(&self) -> Result<Stream<T>> {
        self.cell()?.tail.force()
    }

    /// The unique stream `s` with `s = builder(s)`, provided `builder` is
    /// productive (element k of its output uses only elements < k of its
    /// argument). A non-productive definition fails with
    /// [`Error::NonProductive`] when the offending element is forced.
    pub fn fix(builder: impl FnOnce(&Stream<T>) -> Stream<T>) -> Stream<T> {
        let slot: Rc<RefCell<Option<Stream<T>>>> = Rc::new(RefCell::new(None));
        let handle = Rc::clone(&slot);
        let proxy = Stream::defer(move || handle.borrow().clone().ok_or(Error::NonProductive));
        let built = builder(&proxy);
        *slot.borrow_mut() = Some(built.clone());
        built
    }

    /// First `n` elements, forced strictly in order (iteratively, so a
    /// productive self-referential stream never recurses deeper than one
    /// element at a time).
    pub fn take(&self, n: usize) -> Result<Vec<T>> {
        let mut out = Vec::with_capacity(n);
        let mut cur = self.clone();
        for _ in 0..n {
            out.push(cur.head()?);
            cur = cur.tail()?;
        }
        Ok(out)
    }

    /// Skip the first `n` elements.
    pub fn drop_front(&self, n: usize) -> Result<Stream<T>> {
        let mut cur = self.clone();
        for _ in 0..n {
            cur = cur.tail()?;
        }
        Ok(cur)
    }

    pub fn nth(&self, n: usize) -> Result<T> {
        self.drop_front(n)?.head()
    }

    pub fn map<U: Clone + 'static>(&self, f: impl Fn(T) -> U + 'static) -> Stream<U> {
        self.map_rc(Rc::new(f))
    }

    // The recursion goes through `Rc<dyn Fn>` so the instantiated type stays
    // the same at every depth.
    fn map_rc<U: Clone + 'static>(&self, f: Rc<dyn Fn(T) -> U>) -> Stream<U> {
        let s = self.clone();
        Stream::cons_lazy(
            {
                let s = s.clone();
                let f = Rc::clone(&f);
                move || Ok(f(s.head()?))
            },
            move || Ok(s.tail()?.map_rc(f)),
        )
    }

    /// Fallible map; the error surfaces when the element is forced.
    pub fn map_res<U: Clone + 'static>(
        &self,
        f: impl Fn(T) -> Result<U> + 'static,
    ) -> Stream<U> {
        self.map_res_rc(Rc::new(f))
    }

    fn map_res_rc<U: Clone + 'static>(&self, f: Rc<dyn Fn(T) -> Result<U>>) -> Stream<U> {
        let s = self.clone();
        Stream::cons_lazy(
            {
                let s = s.clone();
                let f = Rc::clone(&f);
                move || f(s.head()?)
            },
            move || Ok(s.tail()?.map_res_rc(f)),
        )
    }

    pub fn zip_with<U: Clone + 'static, V: Clone + 'static>(
        op: impl Fn(T, U) -> Result<V> + 'static,
        a: &Stream<T>,
        b: &Stream<U>,
    ) -> Stream<V> {
        Stream::zip_with_rc(Rc::new(op), a.clone(), b.clone())
    }

    fn zip_with_rc<U: Clone + 'static, V: Clone + 'static>(
        op: Rc<dyn Fn(T, U) -> Result<V>>,
        a: Stream<T>,
        b: Stream<U>,
    ) -> Stream<V> {
        Stream::cons_lazy(
            {
                let (a, b) = (a.clone(), b.clone());
                let op = Rc::clone(&op);
                move || op(a.head()?, b.head()?)
            },
            move || Ok(Stream::zip_with_rc(op, a.tail()?, b.tail()?)),
        )
    }

    pub fn repeat(v: T) -> Stream<T> {
        Stream::fix(|s| Stream::cons(v.clone(), s.clone()))
    }

    pub fn iterate(v: T, step: impl Fn(&T) -> T + 'static) -> Stream<T> {
        let next = step(&v);
        Stream::cons_lazy(move || Ok(v), move || Ok(Stream::iterate(next, step)))
    }

    /// Prepend a finite prefix.
    pub fn prepend(prefix: Vec<T>, rest: Stream<T>) -> Stream<T> {
        let mut s = rest;
        for v in prefix.into_iter().rev() {
            s = Stream::cons(v, s);
        }
        s
    }
}
