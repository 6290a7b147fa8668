#include <nglearn/program.hpp>

#include <algorithm>
#include <map>

namespace nglearn {

ParseError::ParseError(const std::string& msg, int line, int column)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg), line_(line), column_(column) {}

Atom Atom::classical(std::string pred, std::vector<Term> args) {
    return Atom{AtomKind::Classical, std::move(pred), std::move(args), -1};
}

Atom Atom::builtin(std::string op, Term lhs, Term rhs) {
    return Atom{AtomKind::Builtin, std::move(op), {std::move(lhs), std::move(rhs)}, -1};
}

Atom Atom::bodyRep(int ruleId, std::vector<Term> args) {
    return Atom{AtomKind::BodyRep, "_beta_r" + std::to_string(ruleId), std::move(args), ruleId};
}

Atom Atom::hat(const Atom& wrapped) {
    Atom a = wrapped;
    a.kind = AtomKind::ChoiceHat;
    return a;
}

Atom Atom::unhat() const {
    Atom a = *this;
    a.kind = AtomKind::Classical;
    return a;
}

bool Atom::isGround() const {
    return std::all_of(args.begin(), args.end(), [](const Term& t) { return t.isGround(); });
}

void Atom::collectVariables(std::vector<std::string>& out) const {
    for (const auto& t : args) {
        t.collectVariables(out);
    }
}

std::string Atom::toString() const {
    if (kind == AtomKind::Builtin) {
        return args[0].toString() + predicate + args[1].toString();
    }
    std::string s;
    if (kind == AtomKind::ChoiceHat) {
        s = "_hat_";
    }
    s += predicate;
    if (!args.empty()) {
        s += "(";
        for (std::size_t i = 0; i != args.size(); ++i) {
            if (i) {
                s += ",";
            }
            s += args[i].toString();
        }
        s += ")";
    }
    return s;
}

bool isComparisonOperator(const std::string& op) {
    return op == "<" || op == "<=" || op == ">" || op == ">=" || op == "=" || op == "!=";
}

bool evalBuiltin(const Atom& a) {
    auto c = a.args[0] <=> a.args[1];
    const auto& op = a.predicate;
    if (op == "<") return c < 0;
    if (op == "<=") return c <= 0;
    if (op == ">") return c > 0;
    if (op == ">=") return c >= 0;
    if (op == "=") return c == 0;
    if (op == "!=") return c != 0;
    throw Error("unknown comparison operator " + op);
}

std::string Literal::toString() const {
    return naf ? "not " + atom.toString() : atom.toString();
}

std::string SignedLiteral::toString() const {
    return (truth ? "T " : "F ") + atom.toString();
}

std::vector<std::string> Rule::variables() const {
    std::vector<std::string> vars;
    if (head) {
        head->collectVariables(vars);
    }
    for (const auto& e : choice) {
        e.atom.collectVariables(vars);
        for (const auto& l : e.condition) {
            l.atom.collectVariables(vars);
        }
    }
    for (const auto& l : body) {
        l.atom.collectVariables(vars);
    }
    return vars;
}

namespace {
std::string joinLiterals(const std::vector<Literal>& lits) {
    std::string s;
    for (std::size_t i = 0; i != lits.size(); ++i) {
        if (i) {
            s += ", ";
        }
        s += lits[i].toString();
    }
    return s;
}
} // namespace

std::string Rule::toString() const {
    std::string s;
    if (isChoice) {
        s = "{ ";
        for (std::size_t i = 0; i != choice.size(); ++i) {
            if (i) {
                s += "; ";
            }
            s += choice[i].atom.toString();
            if (!choice[i].condition.empty()) {
                s += " : " + joinLiterals(choice[i].condition);
            }
        }
        s += " }";
    }
    else if (head) {
        s = head->toString();
    }
    if (!body.empty()) {
        s += s.empty() ? ":- " : " :- ";
        s += joinLiterals(body);
    }
    else if (!head && !isChoice) {
        s = ":- ";
    }
    return s + ".";
}

std::set<Term> Program::universe() const {
    std::set<Term> out;
    auto addTerm = [&](auto&& self, const Term& t) -> void {
        switch (t.kind()) {
            case Term::Kind::Variable: return;
            case Term::Kind::Function:
                for (const auto& a : t.args()) {
                    self(self, a);
                }
                return;
            default: out.insert(t);
        }
    };
    auto addAtom = [&](const Atom& a) {
        for (const auto& t : a.args) {
            addTerm(addTerm, t);
        }
    };
    for (const auto& r : rules) {
        if (r.head) {
            addAtom(*r.head);
        }
        for (const auto& e : r.choice) {
            addAtom(e.atom);
            for (const auto& l : e.condition) {
                addAtom(l.atom);
            }
        }
        for (const auto& l : r.body) {
            addAtom(l.atom);
        }
    }
    return out;
}

std::size_t Program::choiceElementCount() const {
    std::size_t n = 0;
    for (const auto& r : rules) {
        n += r.choice.size();
    }
    return n;
}

std::size_t Program::choiceRuleCount() const {
    return static_cast<std::size_t>(std::count_if(rules.begin(), rules.end(), [](const Rule& r) { return r.isChoice; }));
}

std::set<PredicateSig> Program::predicates() const {
    std::set<PredicateSig> out;
    auto add = [&](const Atom& a) {
        if (a.kind == AtomKind::Classical || a.kind == AtomKind::ChoiceHat) {
            out.insert(a.signature());
        }
    };
    for (const auto& r : rules) {
        if (r.head) {
            add(*r.head);
        }
        for (const auto& e : r.choice) {
            add(e.atom);
            for (const auto& l : e.condition) {
                add(l.atom);
            }
        }
        for (const auto& l : r.body) {
            add(l.atom);
        }
    }
    return out;
}

std::set<PredicateSig> Program::headPredicates() const {
    std::set<PredicateSig> out;
    for (const auto& r : rules) {
        if (r.head && r.head->kind == AtomKind::Classical) {
            out.insert(r.head->signature());
        }
        for (const auto& e : r.choice) {
            out.insert(e.atom.signature());
        }
    }
    return out;
}

void Program::checkInputPredicates() const {
    auto heads = headPredicates();
    for (const auto& p : inputPredicates) {
        if (heads.count(p)) {
            throw Error("input predicate occurs in head: " + p.toString());
        }
    }
}

void Program::renumber() {
    for (std::size_t i = 0; i != rules.size(); ++i) {
        rules[i].id = static_cast<int>(i);
    }
}

void Program::append(const Program& other) {
    rules.insert(rules.end(), other.rules.begin(), other.rules.end());
    inputPredicates.insert(other.inputPredicates.begin(), other.inputPredicates.end());
    renumber();
}

std::string Program::toString() const {
    std::string s;
    for (const auto& r : rules) {
        s += r.toString();
        s += "\n";
    }
    return s;
}

Program translateChoiceRules(const Program& p) {
    Program out;
    out.inputPredicates = p.inputPredicates;
    for (const auto& r : p.rules) {
        if (!r.isChoice) {
            out.rules.push_back(r);
            continue;
        }
        for (const auto& e : r.choice) {
            Rule pos;
            pos.head = e.atom;
            pos.body = r.body;
            pos.body.insert(pos.body.end(), e.condition.begin(), e.condition.end());
            Rule neg = pos;
            neg.head = Atom::hat(e.atom);
            pos.body.push_back(Literal{Atom::hat(e.atom), true});
            neg.body.push_back(Literal{e.atom, true});
            out.rules.push_back(std::move(pos));
            out.rules.push_back(std::move(neg));
        }
    }
    out.renumber();
    return out;
}

std::vector<Atom> factsOf(const Program& p) {
    std::vector<Atom> out;
    for (const auto& r : p.rules) {
        if (r.isFact() && r.head->isGround()) {
            out.push_back(*r.head);
        }
    }
    return out;
}

} // namespace nglearn
