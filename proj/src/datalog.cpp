#include "orgrisk/datalog.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_map>

namespace orgrisk::datalog {

Literal pos(std::string predicate, std::vector<Term> terms) {
    Literal l;
    l.kind = Literal::Kind::Positive;
    l.atom = {std::move(predicate), std::move(terms)};
    return l;
}

Literal neg(std::string predicate, std::vector<Term> terms) {
    Literal l = pos(std::move(predicate), std::move(terms));
    l.kind = Literal::Kind::Negative;
    return l;
}

Literal not_equal(Term a, Term b) {
    Literal l;
    l.kind = Literal::Kind::Builtin;
    l.comparison = Comparison::NotEqual;
    l.lhs = std::move(a);
    l.rhs = std::move(b);
    return l;
}

Literal less(Term a, Term b) {
    Literal l = not_equal(std::move(a), std::move(b));
    l.comparison = Comparison::Less;
    return l;
}

// ---------------------------------------------------------------------------
// Program

void Program::note_arity(const std::string& predicate, std::size_t arity, const std::string& rule) {
    auto [it, inserted] = arity_.emplace(predicate, arity);
    if (!inserted && it->second != arity)
        throw RuleError("InvalidRule", "rule '" + rule + "': predicate " + predicate + " has arity " +
                                           std::to_string(it->second) + ", used with " +
                                           std::to_string(arity));
}

void Program::declare_input(const std::string& predicate, std::size_t arity) {
    note_arity(predicate, arity, "<input>");
}

std::optional<std::size_t> Program::arity(const std::string& predicate) const {
    auto it = arity_.find(predicate);
    if (it == arity_.end()) return std::nullopt;
    return it->second;
}

Stratum Program::label(const std::string& predicate) const {
    auto it = label_.find(predicate);
    return it == label_.end() ? Stratum::S0 : it->second;
}

bool Program::derives(const std::string& predicate) const { return label_.contains(predicate); }

void Program::add_rule(Rule rule) {
    if (rule.name.empty()) throw RuleError("InvalidRule", "rule needs a name");
    if (rule.canonical_pair && rule.head.terms.size() < 2)
        throw RuleError("InvalidRule", "rule '" + rule.name + "': canonical pair needs two arguments");

    std::set<std::string> bound;
    for (const auto& lit : rule.body) {
        if (lit.kind != Literal::Kind::Positive) continue;
        for (const auto& t : lit.atom.terms)
            if (t.is_variable) bound.insert(t.text);
    }
    auto require_bound = [&](const Term& t, const char* where) {
        if (t.is_variable && !bound.contains(t.text))
            throw RuleError("InvalidRule", "rule '" + rule.name + "': variable " + t.text + " in " +
                                               where + " is not bound by a positive literal");
    };
    for (const auto& t : rule.head.terms) require_bound(t, "head");
    for (const auto& lit : rule.body) {
        if (lit.kind == Literal::Kind::Negative)
            for (const auto& t : lit.atom.terms) require_bound(t, "negated literal");
        if (lit.kind == Literal::Kind::Builtin) {
            require_bound(lit.lhs, "comparison");
            require_bound(lit.rhs, "comparison");
        }
    }

    // Validate all arities before recording any, so a rejected rule leaves
    // the program untouched.
    auto check = [&](const Atom& a) {
        auto known = arity(a.predicate);
        if (known && *known != a.terms.size())
            throw RuleError("InvalidRule", "rule '" + rule.name + "': predicate " + a.predicate +
                                               " has arity " + std::to_string(*known) +
                                               ", used with " + std::to_string(a.terms.size()));
    };
    check(rule.head);
    for (const auto& lit : rule.body)
        if (lit.kind != Literal::Kind::Builtin) check(lit.atom);

    note_arity(rule.head.predicate, rule.head.terms.size(), rule.name);
    for (const auto& lit : rule.body)
        if (lit.kind != Literal::Kind::Builtin)
            note_arity(lit.atom.predicate, lit.atom.terms.size(), rule.name);

    auto& lbl = label_[rule.head.predicate];
    lbl = std::max(lbl, rule.stratum);
    rules_.push_back(std::move(rule));
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

using Symbol = std::uint32_t;
using Tuple = std::vector<Symbol>;
using Stamp = std::uint64_t;

struct TupleHash {
    std::size_t operator()(const Tuple& t) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (Symbol s : t) {
            h ^= s;
            h *= 1099511628211ull;
        }
        return h;
    }
};

class Symbols {
public:
    Symbol intern(const std::string& s) {
        auto [it, inserted] = ids_.emplace(s, static_cast<Symbol>(names_.size()));
        if (inserted) names_.push_back(s);
        return it->second;
    }
    const std::string& name(Symbol s) const { return names_[s]; }

private:
    std::unordered_map<std::string, Symbol> ids_;
    std::vector<std::string> names_;
};

class Relation {
public:
    explicit Relation(std::size_t arity) : columns_(arity) {}

    std::size_t size() const { return tuples_.size(); }
    const Tuple& tuple(std::size_t i) const { return tuples_[i]; }
    Stamp stamp(std::size_t i) const { return stamps_[i]; }

    std::optional<std::size_t> find(const Tuple& t) const {
        auto it = index_.find(t);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    // Returns (position, inserted).
    std::pair<std::size_t, bool> insert(const Tuple& t, Stamp stamp) {
        auto [it, inserted] = index_.emplace(t, tuples_.size());
        if (!inserted) return {it->second, false};
        for (std::size_t c = 0; c < t.size(); ++c) columns_[c][t[c]].push_back(tuples_.size());
        tuples_.push_back(t);
        stamps_.push_back(stamp);
        return {it->second, true};
    }

    // Positions whose column `c` holds `value`, ascending.
    const std::vector<std::size_t>* with(std::size_t c, Symbol value) const {
        auto it = columns_[c].find(value);
        return it == columns_[c].end() ? nullptr : &it->second;
    }

private:
    std::vector<Tuple> tuples_;
    std::vector<Stamp> stamps_;
    std::unordered_map<Tuple, std::size_t, TupleHash> index_;
    std::vector<std::unordered_map<Symbol, std::vector<std::size_t>>> columns_;
};

struct CTerm {
    bool is_variable = false;
    std::uint32_t value = 0;  // variable slot or symbol
};

struct CAtom {
    std::size_t pred = 0;
    std::vector<CTerm> terms;
};

struct CLiteral {
    Literal::Kind kind = Literal::Kind::Positive;
    CAtom atom;
    Comparison comparison = Comparison::NotEqual;
    CTerm lhs, rhs;
};

struct CRule {
    std::size_t source = 0;  // index into Program::rules()
    CAtom head;
    std::vector<CLiteral> body;
    std::size_t slots = 0;
    bool canonical_pair = false;
};

struct PremiseRef {
    std::size_t pred;
    std::size_t pos;
    auto operator<=>(const PremiseRef&) const = default;
};

struct AbsentRef {
    std::size_t pred;
    Tuple tuple;
    auto operator<=>(const AbsentRef&) const = default;
};

struct DerivationKey {
    std::size_t rule;
    std::vector<PremiseRef> premises;
    std::vector<AbsentRef> absent;
    auto operator<=>(const DerivationKey&) const = default;
};

struct Pending {
    std::size_t pred;
    Tuple tuple;
    DerivationKey key;
};

class Evaluator {
public:
    Evaluator(const Program& program, const std::vector<Fact>& inputs) : program_(program) {
        for (const auto& r : program.rules()) {
            pred_id(r.head.predicate, r.head.terms.size());
            for (const auto& l : r.body)
                if (l.kind != Literal::Kind::Builtin) pred_id(l.atom.predicate, l.atom.terms.size());
        }
        for (const auto& f : inputs) {
            auto known = program.arity(f.predicate);
            if (known && *known != f.args.size())
                throw RuleError("InvalidFact", "input fact " + to_string(f) + " has the wrong arity");
            std::size_t p = pred_id(f.predicate, f.args.size());
            if (pred_arity_[p] != f.args.size())
                throw RuleError("InvalidFact", "input fact " + to_string(f) + " has the wrong arity");
            Tuple t;
            for (const auto& a : f.args) t.push_back(symbols_.intern(a));
            auto [pos, inserted] = relations_[p].insert(t, 0);
            if (inserted) input_.insert({p, pos});
        }
        for (std::size_t i = 0; i < program.rules().size(); ++i) compile(i);
    }

    Fixpoint run() {
        for (const auto& scc : components()) evaluate_component(scc);
        return collect();
    }

private:
    std::size_t pred_id(const std::string& name, std::size_t arity) {
        auto [it, inserted] = pred_index_.emplace(name, pred_names_.size());
        if (inserted) {
            pred_names_.push_back(name);
            pred_arity_.push_back(arity);
            relations_.emplace_back(arity);
        }
        return it->second;
    }

    void compile(std::size_t index) {
        const Rule& r = program_.rules()[index];
        std::map<std::string, std::uint32_t> slots;
        auto term = [&](const Term& t) {
            if (!t.is_variable) return CTerm{false, symbols_.intern(t.text)};
            auto [it, _] = slots.emplace(t.text, static_cast<std::uint32_t>(slots.size()));
            return CTerm{true, it->second};
        };
        auto atom = [&](const Atom& a) {
            CAtom c{pred_index_.at(a.predicate), {}};
            for (const auto& t : a.terms) c.terms.push_back(term(t));
            return c;
        };

        CRule c;
        c.source = index;
        c.canonical_pair = r.canonical_pair;
        // Positive literals keep their written order; each filter (negated or
        // built-in literal) runs as soon as all its variables are bound.
        std::vector<CLiteral> filters;
        std::vector<std::set<std::uint32_t>> filter_vars;
        for (const auto& l : r.body) {
            CLiteral cl;
            cl.kind = l.kind;
            if (l.kind == Literal::Kind::Builtin) {
                cl.comparison = l.comparison;
                cl.lhs = term(l.lhs);
                cl.rhs = term(l.rhs);
            } else {
                cl.atom = atom(l.atom);
            }
            if (l.kind == Literal::Kind::Positive) {
                c.body.push_back(std::move(cl));
            } else {
                filters.push_back(std::move(cl));
            }
        }
        for (auto& f : filters) {
            std::set<std::uint32_t> vars;
            auto note = [&](const CTerm& t) {
                if (t.is_variable) vars.insert(t.value);
            };
            if (f.kind == Literal::Kind::Builtin) {
                note(f.lhs);
                note(f.rhs);
            } else {
                for (const auto& t : f.atom.terms) note(t);
            }
            filter_vars.push_back(std::move(vars));
        }
        std::vector<CLiteral> ordered;
        std::set<std::uint32_t> bound;
        std::vector<bool> placed(filters.size(), false);
        auto place_ready = [&] {
            for (std::size_t i = 0; i < filters.size(); ++i) {
                if (placed[i]) continue;
                if (std::includes(bound.begin(), bound.end(), filter_vars[i].begin(),
                                  filter_vars[i].end())) {
                    ordered.push_back(filters[i]);
                    placed[i] = true;
                }
            }
        };
        place_ready();
        for (auto& p : c.body) {
            for (const auto& t : p.atom.terms)
                if (t.is_variable) bound.insert(t.value);
            ordered.push_back(std::move(p));
            place_ready();
        }
        c.body = std::move(ordered);
        c.head = atom(r.head);
        c.slots = slots.size();
        rules_.push_back(std::move(c));
    }

    // Strongly connected components of derived predicates, dependencies first.
    std::vector<std::vector<std::size_t>> components() {
        const std::size_t n = pred_names_.size();
        std::vector<std::set<std::size_t>> deps(n);
        std::vector<bool> derived(n, false);
        for (const auto& r : rules_) derived[r.head.pred] = true;
        for (const auto& r : rules_)
            for (const auto& l : r.body)
                if (l.kind != Literal::Kind::Builtin && derived[l.atom.pred])
                    deps[r.head.pred].insert(l.atom.pred);

        // Tarjan; with edges pointing at dependencies, components come out in
        // dependency-first order.
        std::vector<int> index(n, -1), low(n, 0);
        std::vector<bool> on_stack(n, false);
        std::vector<std::size_t> stack;
        std::vector<std::vector<std::size_t>> out;
        int counter = 0;
        std::function<void(std::size_t)> strong = [&](std::size_t v) {
            index[v] = low[v] = counter++;
            stack.push_back(v);
            on_stack[v] = true;
            for (std::size_t w : deps[v]) {
                if (index[w] < 0) {
                    strong(w);
                    low[v] = std::min(low[v], low[w]);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
            }
            if (low[v] == index[v]) {
                std::vector<std::size_t> comp;
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp.push_back(w);
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                out.push_back(std::move(comp));
            }
        };
        // Visit in name order so the component order is independent of rule
        // registration order.
        std::vector<std::size_t> order;
        for (std::size_t v = 0; v < n; ++v)
            if (derived[v]) order.push_back(v);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return pred_names_[a] < pred_names_[b]; });
        for (std::size_t v : order)
            if (index[v] < 0) strong(v);

        component_of_.assign(n, SIZE_MAX);
        for (std::size_t c = 0; c < out.size(); ++c)
            for (std::size_t p : out[c]) component_of_[p] = c;
        for (const auto& r : rules_)
            for (const auto& l : r.body)
                if (l.kind == Literal::Kind::Negative &&
                    component_of_[l.atom.pred] == component_of_[r.head.pred])
                    throw RuleError("Unstratifiable",
                                    "rule '" + program_.rules()[r.source].name + "' negates " +
                                        pred_names_[l.atom.pred] +
                                        " inside its own recursive component");
        return out;
    }

    void evaluate_component(const std::vector<std::size_t>& scc) {
        std::set<std::size_t> members(scc.begin(), scc.end());
        std::vector<const CRule*> rules;
        for (const auto& r : rules_)
            if (members.contains(r.head.pred)) rules.push_back(&r);

        // Delta window per predicate of this component: [lo, hi).
        std::map<std::size_t, std::pair<std::size_t, std::size_t>> delta;
        bool first = true;
        while (true) {
            ++clock_;
            std::vector<Pending> pending;
            for (const CRule* r : rules) {
                if (first) {
                    fire(*r, SIZE_MAX, 0, 0, pending);
                    continue;
                }
                for (std::size_t li = 0; li < r->body.size(); ++li) {
                    const auto& l = r->body[li];
                    if (l.kind != Literal::Kind::Positive || !members.contains(l.atom.pred)) continue;
                    auto [lo, hi] = delta[l.atom.pred];
                    if (lo < hi) fire(*r, li, lo, hi, pending);
                }
            }
            first = false;

            std::map<std::size_t, std::size_t> before;
            for (std::size_t p : scc) before[p] = relations_[p].size();
            for (auto& item : pending) commit(std::move(item));
            bool grew = false;
            for (std::size_t p : scc) {
                delta[p] = {before[p], relations_[p].size()};
                grew = grew || relations_[p].size() > before[p];
            }
            if (!grew) break;
        }
    }

    void commit(Pending item) {
        Relation& rel = relations_[item.pred];
        auto [pos, inserted] = rel.insert(item.tuple, clock_);
        const Stamp own = rel.stamp(pos);
        if (own != 0) {
            for (const auto& p : item.key.premises)
                if (relations_[p.pred].stamp(p.pos) >= own) return;
        }
        derivations_[{item.pred, pos}].insert(std::move(item.key));
    }

    // Fires `r` against the current relations. Literal `delta_literal` (if
    // any) only matches positions [lo, hi); every other positive literal
    // matches the relation as it was when the round started.
    void fire(const CRule& r, std::size_t delta_literal, std::size_t lo, std::size_t hi,
              std::vector<Pending>& out) {
        std::vector<Symbol> binding(r.slots, 0);
        std::vector<bool> is_bound(r.slots, false);
        std::vector<PremiseRef> premises;
        std::vector<AbsentRef> absent;
        std::vector<std::size_t> limit(relations_.size());
        for (std::size_t p = 0; p < relations_.size(); ++p) limit[p] = relations_[p].size();

        auto value = [&](const CTerm& t) { return t.is_variable ? binding[t.value] : t.value; };
        auto ground = [&](const CAtom& a) {
            Tuple t;
            t.reserve(a.terms.size());
            for (const auto& term : a.terms) t.push_back(value(term));
            return t;
        };

        std::function<void(std::size_t)> step = [&](std::size_t li) {
            if (li == r.body.size()) {
                Tuple head = ground(r.head);
                if (r.canonical_pair && symbols_.name(head[1]) < symbols_.name(head[0]))
                    std::swap(head[0], head[1]);
                out.push_back({r.head.pred, std::move(head), {r.source, premises, absent}});
                return;
            }
            const CLiteral& l = r.body[li];
            if (l.kind == Literal::Kind::Builtin) {
                Symbol a = value(l.lhs), b = value(l.rhs);
                bool ok = l.comparison == Comparison::NotEqual
                              ? a != b
                              : symbols_.name(a) < symbols_.name(b);
                if (ok) step(li + 1);
                return;
            }
            const Relation& rel = relations_[l.atom.pred];
            if (l.kind == Literal::Kind::Negative) {
                Tuple t = ground(l.atom);
                if (rel.find(t)) return;
                absent.push_back({l.atom.pred, std::move(t)});
                step(li + 1);
                absent.pop_back();
                return;
            }

            const std::size_t from = li == delta_literal ? lo : 0;
            const std::size_t to = li == delta_literal ? hi : limit[l.atom.pred];
            auto try_tuple = [&](std::size_t pos) {
                const Tuple& t = rel.tuple(pos);
                std::vector<std::uint32_t> newly;
                bool ok = true;
                for (std::size_t c = 0; c < l.atom.terms.size() && ok; ++c) {
                    const CTerm& term = l.atom.terms[c];
                    if (!term.is_variable) {
                        ok = t[c] == term.value;
                    } else if (is_bound[term.value]) {
                        ok = t[c] == binding[term.value];
                    } else {
                        binding[term.value] = t[c];
                        is_bound[term.value] = true;
                        newly.push_back(term.value);
                    }
                }
                if (ok) {
                    premises.push_back({l.atom.pred, pos});
                    step(li + 1);
                    premises.pop_back();
                }
                for (auto s : newly) is_bound[s] = false;
            };

            // Use the column index of the first bound argument, if any.
            for (std::size_t c = 0; c < l.atom.terms.size(); ++c) {
                const CTerm& term = l.atom.terms[c];
                if (term.is_variable && !is_bound[term.value]) continue;
                const auto* hits = rel.with(c, value(term));
                if (!hits) return;
                auto begin = std::lower_bound(hits->begin(), hits->end(), from);
                for (auto it = begin; it != hits->end() && *it < to; ++it) try_tuple(*it);
                return;
            }
            for (std::size_t pos = from; pos < to; ++pos) try_tuple(pos);
        };
        step(0);
    }

    Fact to_fact(std::size_t pred, const Tuple& t) const {
        Fact f{pred_names_[pred], {}};
        for (Symbol s : t) f.args.push_back(symbols_.name(s));
        return f;
    }

    Fixpoint collect() const {
        Fixpoint out;
        for (std::size_t p = 0; p < relations_.size(); ++p) {
            const Stratum label = program_.label(pred_names_[p]);
            for (std::size_t i = 0; i < relations_[p].size(); ++i)
                out.facts.emplace(to_fact(p, relations_[p].tuple(i)), label);
        }
        for (const auto& ref : input_) {
            Fact f = to_fact(ref.first, relations_[ref.first].tuple(ref.second));
            out.derivations[f].push_back({f, std::string(kAssertedRule), {}, {}});
        }
        for (const auto& [ref, keys] : derivations_) {
            Fact f = to_fact(ref.first, relations_[ref.first].tuple(ref.second));
            auto& list = out.derivations[f];
            for (const auto& k : keys) {
                Derivation d{f, program_.rules()[k.rule].name, {}, {}};
                for (const auto& p : k.premises)
                    d.premises.push_back(to_fact(p.pred, relations_[p.pred].tuple(p.pos)));
                for (const auto& a : k.absent) d.absent.push_back(to_fact(a.pred, a.tuple));
                list.push_back(std::move(d));
            }
        }
        for (auto& [_, list] : out.derivations) {
            std::sort(list.begin(), list.end());
            list.erase(std::unique(list.begin(), list.end()), list.end());
        }
        return out;
    }

    const Program& program_;
    Symbols symbols_;
    std::map<std::string, std::size_t> pred_index_;
    std::vector<std::string> pred_names_;
    std::vector<std::size_t> pred_arity_;
    std::vector<Relation> relations_;
    std::vector<CRule> rules_;
    std::vector<std::size_t> component_of_;
    std::set<std::pair<std::size_t, std::size_t>> input_;
    std::map<std::pair<std::size_t, std::size_t>, std::set<DerivationKey>> derivations_;
    Stamp clock_ = 0;
};

}  // namespace

Fixpoint evaluate(const Program& program, const std::vector<Fact>& inputs) {
    return Evaluator(program, inputs).run();
}

}  // namespace orgrisk::datalog
