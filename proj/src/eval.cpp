#include "stratkit/eval.hpp"

#include <map>
#include <unordered_set>

#include "stratkit/errors.hpp"

namespace stratkit {

namespace {

using Seen = std::unordered_set<Term, TermHash>;

class EmptyStream : public Stream {
 public:
  std::optional<Term> next() override { return std::nullopt; }
};

class VecStream : public Stream {
 public:
  explicit VecStream(std::vector<Term> items) : items_(std::move(items)) {}
  std::optional<Term> next() override {
    if (i_ >= items_.size()) return std::nullopt;
    return items_[i_++];
  }

 private:
  std::vector<Term> items_;
  std::size_t i_ = 0;
};

/// A stream whose first element has already been pulled.
class PeekedStream : public Stream {
 public:
  PeekedStream(Term head, StreamPtr rest) : head_(std::move(head)), rest_(std::move(rest)) {}
  std::optional<Term> next() override {
    if (head_) return std::exchange(head_, std::nullopt);
    return rest_->next();
  }

 private:
  std::optional<Term> head_;
  StreamPtr rest_;
};

class ConcatStream : public Stream {
 public:
  ConcatStream(const Evaluator& ev, StreamPtr first, StratPtr second, Substitution env, std::size_t depth)
      : ev_(ev), first_(std::move(first)), second_(std::move(second)), env_(std::move(env)), depth_(depth) {}

  std::optional<Term> next() override {
    while (true) {
      if (cur_) {
        if (auto x = cur_->next()) {
          if (seen_.insert(*x).second) return x;
          continue;
        }
        cur_.reset();
      }
      auto u = first_->next();
      if (!u) return std::nullopt;
      cur_ = ev_.open(second_, *u, env_, depth_);
    }
  }

 private:
  const Evaluator& ev_;
  StreamPtr first_;
  StratPtr second_;
  Substitution env_;
  std::size_t depth_;
  StreamPtr cur_;
  Seen seen_;
};

class UnionStream : public Stream {
 public:
  UnionStream(const Evaluator& ev, StratPtr a, StratPtr b, Term t, Substitution env, std::size_t depth)
      : ev_(ev), parts_{std::move(a), std::move(b)}, t_(std::move(t)), env_(std::move(env)), depth_(depth) {}

  std::optional<Term> next() override {
    while (i_ < 2) {
      if (!cur_) cur_ = ev_.open(parts_[i_], t_, env_, depth_);
      if (auto x = cur_->next()) {
        if (seen_.insert(*x).second) return x;
        continue;
      }
      cur_.reset();
      ++i_;
    }
    return std::nullopt;
  }

 private:
  const Evaluator& ev_;
  StratPtr parts_[2];
  Term t_;
  Substitution env_;
  std::size_t depth_;
  std::size_t i_ = 0;
  StreamPtr cur_;
  Seen seen_;
};

class IteStream : public Stream {
 public:
  IteStream(const Evaluator& ev, StratPtr c, StratPtr th, StratPtr el, Term t, Substitution env, std::size_t depth)
      : ev_(ev), c_(std::move(c)), th_(std::move(th)), el_(std::move(el)), t_(std::move(t)), env_(std::move(env)),
        depth_(depth) {}

  std::optional<Term> next() override {
    if (!out_) {
      auto cs = ev_.open(c_, t_, env_, depth_);
      if (auto head = cs->next()) {
        if (th_->kind == Strategy::Kind::Fail)
          out_ = std::make_unique<EmptyStream>();
        else if (th_->kind == Strategy::Kind::Idle)
          out_ = std::make_unique<PeekedStream>(*head, std::move(cs));
        else
          out_ = std::make_unique<ConcatStream>(ev_, std::make_unique<PeekedStream>(*head, std::move(cs)), th_, env_,
                                                depth_);
      } else {
        out_ = ev_.open(el_, t_, env_, depth_);
      }
    }
    return out_->next();
  }

 private:
  const Evaluator& ev_;
  StratPtr c_, th_, el_;
  Term t_;
  Substitution env_;
  std::size_t depth_;
  StreamPtr out_;
};

/// Depth-first closure shared by `*`, `+` and `!`.
class ClosureStream : public Stream {
 public:
  enum class Mode { Star, Plus, Bang };

  ClosureStream(const Evaluator& ev, StratPtr s, Term t, Substitution env, std::size_t depth, Mode mode)
      : ev_(ev), s_(std::move(s)), root_(std::move(t)), env_(std::move(env)), depth_(depth), mode_(mode) {}

  std::optional<Term> next() override {
    if (!started_) {
      started_ = true;
      visited_.insert(root_);
      if (mode_ == Mode::Bang) {
        if (!expand(root_)) return root_;
      } else {
        stack_.push_back(ev_.open(s_, root_, env_, depth_));
        if (mode_ == Mode::Star) return root_;
      }
    }
    while (!stack_.empty()) {
      auto u = stack_.back()->next();
      if (!u) {
        stack_.pop_back();
        continue;
      }
      if (mode_ == Mode::Plus && *u == root_ && !root_emitted_) {
        root_emitted_ = true;
        return u;
      }
      if (!visited_.insert(*u).second) continue;
      ev_.check_states(visited_.size());
      if (mode_ == Mode::Bang) {
        if (!expand(*u)) return u;
      } else {
        stack_.push_back(ev_.open(s_, *u, env_, depth_));
        return u;
      }
    }
    return std::nullopt;
  }

 private:
  /// Pushes the successors of u; false when there are none.
  bool expand(const Term& u) {
    auto succ = ev_.open(s_, u, env_, depth_);
    auto head = succ->next();
    if (!head) return false;
    stack_.push_back(std::make_unique<PeekedStream>(*head, std::move(succ)));
    return true;
  }

  const Evaluator& ev_;
  StratPtr s_;
  Term root_;
  Substitution env_;
  std::size_t depth_;
  Mode mode_;
  bool started_ = false;
  bool root_emitted_ = false;
  std::vector<StreamPtr> stack_;
  Seen visited_;
};

std::map<std::string, VarKey> rule_variables(const Rule& r) {
  std::set<VarKey> vs = variables(r.lhs);
  collect_variables(r.rhs, vs);
  for (const auto& frag : r.cond) {
    std::visit(
        [&](const auto& f) {
          using F = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<F, MatchAssignCond>) {
            collect_variables(f.pattern, vs);
            if (const Term* t = std::get_if<Term>(&f.source)) {
              collect_variables(*t, vs);
            } else {
              for (const auto& a : std::get<NativeCall>(f.source).args) collect_variables(a, vs);
            }
          } else if constexpr (std::is_same_v<F, NativeTestCond>) {
            for (const auto& a : f.args) collect_variables(a, vs);
          } else if constexpr (std::is_same_v<F, RewriteCond>) {
            collect_variables(f.lhs, vs);
            collect_variables(f.pattern, vs);
          } else {
            collect_variables(f.lhs, vs);
            collect_variables(f.rhs, vs);
          }
        },
        frag);
  }
  std::map<std::string, VarKey> out;
  for (const auto& v : vs) out.emplace(v.name, v);
  return out;
}

class RuleAppStream : public Stream {
 public:
  RuleAppStream(const Evaluator& ev, const Strategy& s, Term t, Substitution env, std::size_t depth)
      : ev_(ev), s_(s), t_(std::move(t)), env_(std::move(env)), depth_(depth) {
    const Rewriter& rw = ev_.rewriter();
    auto rules = rw.module().rules_labeled(s.name);
    if (rules.empty()) throw NameError("unknown rule label or strategy: " + s.name);
    std::vector<std::pair<std::string, Term>> values;
    for (const auto& [var, value] : s.bindings) values.emplace_back(var, rw.normalize(subst_apply(env_, value)));
    for (const Rule* r : rules) {
      if (!s.subs.empty() && s.subs.size() != rewrite_fragment_count(r->cond))
        throw ArityError("rule " + s.name + " has " + std::to_string(rewrite_fragment_count(r->cond)) +
                         " rewrite condition fragments but " + std::to_string(s.subs.size()) + " strategies were given");
      auto vars = rule_variables(*r);
      Substitution init;
      bool ok = true;
      for (const auto& [var, value] : values) {
        auto it = vars.find(var);
        if (it == vars.end()) {
          if (rules.size() == 1) throw NameError("rule " + s.name + " has no variable " + var);
          ok = false;
          break;
        }
        if (!rw.sig().leq(value.sort(), it->second.sort))
          throw SortError("value for " + var + " has sort " + value.sort() + ", expected " + it->second.sort);
        init.set(it->second, value);
      }
      if (!ok) continue;
      for (auto& m : rw.rule_matches(t_, *r, s.top ? Where::Top : Where::Anywhere, init))
        jobs_.emplace_back(r, std::move(m));
    }
  }

  std::optional<Term> next() override {
    while (true) {
      if (buf_i_ < buf_.size()) {
        Term x = buf_[buf_i_++];
        if (!seen_.insert(x).second) continue;
        ev_.note_rewrite(x);
        return x;
      }
      if (job_i_ >= jobs_.size()) return std::nullopt;
      const auto& [rule, m] = jobs_[job_i_++];
      buf_.clear();
      buf_i_ = 0;
      if (s_.subs.empty()) {
        buf_ = ev_.rewriter().fire(t_, *rule, m);
      } else {
        CondSolver solver = [this](std::size_t k, const Term& start) {
          auto set = ev_.eval(s_.subs[k], start, env_);
          return std::vector<Term>(set.begin(), set.end());
        };
        buf_ = ev_.rewriter().fire(t_, *rule, m, &solver);
      }
    }
  }

 private:
  const Evaluator& ev_;
  const Strategy& s_;
  Term t_;
  Substitution env_;
  std::size_t depth_;
  std::vector<std::pair<const Rule*, Match>> jobs_;
  std::size_t job_i_ = 0;
  std::vector<Term> buf_;
  std::size_t buf_i_ = 0;
  Seen seen_;
};

Term replace_many(const Term& t, const std::map<Position, Term>& repl, Position& path) {
  auto it = repl.find(path);
  if (it != repl.end()) return it->second;
  if (t.is_var() || t.arity() == 0) return t;
  bool below = false;
  for (const auto& [p, _] : repl)
    if (p.size() > path.size() && std::equal(path.begin(), path.end(), p.begin())) below = true;
  if (!below) return t;
  std::vector<Term> args;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    path.push_back(i + 1);
    args.push_back(replace_many(t.args()[i], repl, path));
    path.pop_back();
  }
  return Term::app(t.op_ref(), std::move(args));
}

bool is_prefix(const Position& a, const Position& b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

class MatchRewStream : public Stream {
 public:
  MatchRewStream(const Evaluator& ev, const Strategy& s, Term t, Substitution env, std::size_t depth)
      : ev_(ev), s_(s), t_(std::move(t)), depth_(depth) {
    const Rewriter& rw = ev_.rewriter();
    std::map<Position, Term> holes;
    std::vector<Position> taken;
    for (std::size_t i = 0; i < s.subpatterns.size(); ++i) {
      std::optional<Position> found;
      for (const auto& p : positions(s.pattern)) {
        if (!(subterm_at(s.pattern, p) == s.subpatterns[i])) continue;
        bool clash = false;
        for (const auto& q : taken) clash = clash || is_prefix(p, q) || is_prefix(q, p);
        if (!clash) {
          found = p;
          break;
        }
      }
      if (!found) throw StateError("matchrew subpatterns must be disjoint subterms of the main pattern");
      taken.push_back(*found);
      Term hole = Term::var("%hole" + std::to_string(i), s.subpatterns[i].sort());
      holes_.push_back(VarKey{hole.name(), hole.sort()});
      holes.emplace(*found, hole);
    }
    Position path;
    skeleton_ = replace_many(s.pattern, holes, path);

    auto matches = s.top ? match_top(rw.sig(), s.pattern, t_, env) : match_anywhere(rw.sig(), s.pattern, t_, env);
    for (auto& m : matches) {
      for (auto& sol : rw.eval_condition(s.cond, m.subst)) {
        Match mm = m;
        mm.subst = std::move(sol);
        jobs_.push_back(std::move(mm));
      }
    }
  }

  std::optional<Term> next() override {
    while (true) {
      if (buf_i_ < buf_.size()) {
        Term x = buf_[buf_i_++];
        if (seen_.insert(x).second) return x;
        continue;
      }
      if (lead_) {
        if (auto x = lead_->next()) {
          fill(*x);
          continue;
        }
        lead_.reset();
      }
      if (job_i_ >= jobs_.size()) return std::nullopt;
      start(jobs_[job_i_++]);
    }
  }

 private:
  void start(const Match& m) {
    const Rewriter& rw = ev_.rewriter();
    cur_ = m;
    rest_.clear();
    for (std::size_t i = 1; i < s_.subpatterns.size(); ++i) {
      Term input = rw.normalize(subst_apply(m.subst, s_.subpatterns[i]));
      auto set = ev_.eval(s_.subs[i], input, m.subst);
      if (set.empty()) return;
      rest_.emplace_back(set.begin(), set.end());
    }
    Term input = rw.normalize(subst_apply(m.subst, s_.subpatterns[0]));
    lead_ = ev_.open(s_.subs[0], input, m.subst, depth_);
  }

  void fill(const Term& lead) {
    buf_.clear();
    buf_i_ = 0;
    std::vector<std::size_t> idx(rest_.size(), 0);
    while (true) {
      Substitution sub = cur_.subst;
      sub.set(holes_[0], lead);
      for (std::size_t i = 0; i < rest_.size(); ++i) sub.set(holes_[i + 1], rest_[i][idx[i]]);
      buf_.push_back(ev_.rewriter().normalize(plug(t_, cur_, subst_apply(sub, skeleton_))));
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == rest_[k].size()) idx[k++] = 0;
      if (k == idx.size()) break;
    }
  }

  const Evaluator& ev_;
  const Strategy& s_;
  Term t_;
  std::size_t depth_;
  Term skeleton_;
  std::vector<VarKey> holes_;
  std::vector<Match> jobs_;
  std::size_t job_i_ = 0;
  Match cur_;
  std::vector<std::vector<Term>> rest_;
  StreamPtr lead_;
  std::vector<Term> buf_;
  std::size_t buf_i_ = 0;
  Seen seen_;
};

class CallStream : public Stream {
 public:
  CallStream(const Evaluator& ev, const Strategy& s, Term t, const Substitution& env, std::size_t depth)
      : ev_(ev), t_(std::move(t)), depth_(depth + 1) {
    if (depth_ > ev_.limits().max_depth)
      throw DepthExceeded("strategy call depth exceeded " + std::to_string(ev_.limits().max_depth) + " at " + s.name);
    const Rewriter& rw = ev_.rewriter();
    defs_ = ev_.strategies().defs_for(s.name);
    if (defs_.empty() && !ev_.strategies().declares(s.name)) throw NameError("unknown strategy: " + s.name);
    for (const auto& a : s.args) {
      auto v = rw.eval_data(a, env);
      if (!v) {
        failed_ = true;
        return;
      }
      args_.push_back(*v);
    }
  }

  std::optional<Term> next() override {
    if (failed_) return std::nullopt;
    while (true) {
      if (cur_) {
        if (auto x = cur_->next()) {
          if (seen_.insert(*x).second) return x;
          continue;
        }
        cur_.reset();
      }
      if (env_i_ < envs_.size()) {
        cur_ = ev_.open(body_, t_, envs_[env_i_++], depth_);
        continue;
      }
      if (def_i_ >= defs_.size()) return std::nullopt;
      prepare(*defs_[def_i_++]);
    }
  }

 private:
  void prepare(const StratDef& d) {
    envs_.clear();
    env_i_ = 0;
    body_ = d.body;
    if (d.params.size() != args_.size()) return;
    const Rewriter& rw = ev_.rewriter();
    std::vector<Substitution> subs{Substitution{}};
    for (std::size_t i = 0; i < args_.size() && !subs.empty(); ++i) {
      std::vector<Substitution> next;
      for (const auto& sub : subs)
        for (auto& m : match_exact(rw.sig(), d.params[i], args_[i], sub)) next.push_back(std::move(m));
      subs = std::move(next);
    }
    for (const auto& sub : subs)
      for (auto& sol : rw.eval_condition(d.cond, sub)) envs_.push_back(std::move(sol));
  }

  const Evaluator& ev_;
  Term t_;
  std::size_t depth_;
  std::vector<const StratDef*> defs_;
  std::vector<Term> args_;
  bool failed_ = false;
  std::size_t def_i_ = 0;
  std::vector<Substitution> envs_;
  std::size_t env_i_ = 0;
  StratPtr body_;
  StreamPtr cur_;
  Seen seen_;
};

class TestStream : public Stream {
 public:
  TestStream(const Evaluator& ev, const Strategy& s, Term t, Substitution env)
      : ev_(ev), s_(s), t_(std::move(t)), env_(std::move(env)) {}

  std::optional<Term> next() override {
    if (done_) return std::nullopt;
    done_ = true;
    const Rewriter& rw = ev_.rewriter();
    bool ok = false;
    visit_matches(rw.sig(), s_.pattern, t_, env_, !s_.top, [&](const Match& m) {
      ok = !rw.eval_condition(s_.cond, m.subst).empty();
      return ok;
    });
    if (ok) return t_;
    return std::nullopt;
  }

 private:
  const Evaluator& ev_;
  const Strategy& s_;
  Term t_;
  Substitution env_;
  bool done_ = false;
};

}  // namespace

Evaluator::Evaluator(const Rewriter& rewriter, const StrategyModule& strategies, EvalLimits limits)
    : rw_(rewriter), strategies_(strategies), limits_(limits) {}

void Evaluator::note_rewrite(const Term& t) const {
  ++inferences_;
  last_rewrite_ = t;
  if (limits_.max_inferences != 0 && inferences_ > limits_.max_inferences)
    throw InferenceBudgetExceeded("rule application budget of " + std::to_string(limits_.max_inferences) +
                                  " exceeded");
}

void Evaluator::check_states(std::size_t n) const {
  if (n > limits_.max_states)
    throw StateBudgetExceeded("fixpoint exceeded the state budget of " + std::to_string(limits_.max_states));
}

StreamPtr Evaluator::open(const StratPtr& s, const Term& t, const Substitution& env, std::size_t depth) const {
  using K = Strategy::Kind;
  switch (s->kind) {
    case K::Idle:
      return std::make_unique<VecStream>(std::vector<Term>{t});
    case K::Fail:
      return std::make_unique<EmptyStream>();
    case K::RuleApp:
      return std::make_unique<RuleAppStream>(*this, *s, t, env, depth);
    case K::Test:
      return std::make_unique<TestStream>(*this, *s, t, env);
    case K::Concat:
      return std::make_unique<ConcatStream>(*this, open(s->subs[0], t, env, depth), s->subs[1], env, depth);
    case K::Union:
      return std::make_unique<UnionStream>(*this, s->subs[0], s->subs[1], t, env, depth);
    case K::Plus:
      return std::make_unique<ClosureStream>(*this, s->subs[0], t, env, depth, ClosureStream::Mode::Plus);
    case K::Star:
      return std::make_unique<ClosureStream>(*this, s->subs[0], t, env, depth, ClosureStream::Mode::Star);
    case K::Bang:
      return std::make_unique<ClosureStream>(*this, s->subs[0], t, env, depth, ClosureStream::Mode::Bang);
    case K::IfThenElse:
      return std::make_unique<IteStream>(*this, s->subs[0], s->subs[1], s->subs[2], t, env, depth);
    case K::OrElse:
      return std::make_unique<IteStream>(*this, s->subs[0], strat::idle(), s->subs[1], t, env, depth);
    case K::Not:
      return std::make_unique<IteStream>(*this, s->subs[0], strat::fail(), strat::idle(), t, env, depth);
    case K::Try:
      return std::make_unique<IteStream>(*this, s->subs[0], strat::idle(), strat::idle(), t, env, depth);
    case K::TestOf:
      return std::make_unique<IteStream>(*this, strat::not_(s->subs[0]), strat::fail(), strat::idle(), t, env, depth);
    case K::MatchRew:
      return std::make_unique<MatchRewStream>(*this, *s, t, env, depth);
    case K::Call:
      return std::make_unique<CallStream>(*this, *s, t, env, depth);
  }
  return std::make_unique<EmptyStream>();
}

TermSet Evaluator::eval(const StratPtr& s, const Term& t, const Substitution& env) const {
  TermSet out;
  auto st = open(s, t, env, 0);
  while (auto x = st->next()) out.insert(std::move(*x));
  return out;
}

TermSet Evaluator::eval(const StratPtr& s, const TermSet& inputs) const {
  TermSet out;
  for (const auto& t : inputs) {
    auto part = eval(s, t);
    out.insert(part.begin(), part.end());
  }
  return out;
}

std::optional<Term> Evaluator::first(const StratPtr& s, const Term& t, const Substitution& env) const {
  return open(s, t, env, 0)->next();
}

}  // namespace stratkit
