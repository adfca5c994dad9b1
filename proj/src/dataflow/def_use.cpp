#include "secrisk/dataflow/def_use.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "secrisk/common/text.hpp"

namespace secrisk::flow {

namespace {

using py::Expr;
using py::Stmt;
using EK = Expr::Kind;
using SK = Stmt::Kind;
using VK = Value::Kind;

constexpr int kMaxLoopRounds = 4;
constexpr std::size_t kMaxRepeatLength = 4096;

std::optional<long long> parse_python_int(std::string_view text) {
    std::string digits;
    for (char c : text)
        if (c != '_') digits.push_back(c);
    if (digits.empty()) return std::nullopt;
    int base = 10;
    std::size_t i = 0;
    if (digits.size() > 1 && digits[0] == '0') {
        char p = static_cast<char>(std::tolower(static_cast<unsigned char>(digits[1])));
        if (p == 'x') base = 16;
        if (p == 'o') base = 8;
        if (p == 'b') base = 2;
        if (base != 10) i = 2;
    }
    if (i >= digits.size()) return std::nullopt;
    long long v = 0;
    for (; i < digits.size(); ++i) {
        char c = static_cast<char>(std::tolower(static_cast<unsigned char>(digits[i])));
        int d;
        if (c >= '0' && c <= '9')
            d = c - '0';
        else if (c >= 'a' && c <= 'f')
            d = c - 'a' + 10;
        else
            return std::nullopt;
        if (d >= base) return std::nullopt;
        if (__builtin_mul_overflow(v, base, &v) || __builtin_add_overflow(v, d, &v)) return std::nullopt;
    }
    return v;
}

std::optional<long long> int_of(const Value& v) {
    if (v.kind != VK::Num || !v.is_int || v.text.empty()) return std::nullopt;
    const bool neg = v.text[0] == '-';
    auto x = parse_python_int(neg ? v.text.substr(1) : v.text);
    if (!x) return std::nullopt;
    return neg ? -*x : *x;
}

std::optional<bool> truthiness(const Value& v) {
    switch (v.kind) {
        case VK::Str:
            if (fully_resolved(v.fragments)) return !join_fragments(v.fragments).empty();
            for (const auto& f : v.fragments)
                if (f.text && !f.text->empty()) return true;
            return std::nullopt;
        case VK::Num:
            if (auto i = int_of(v)) return *i != 0;
            return std::nullopt;
        case VK::Const:
            if (v.text == "True") return true;
            if (v.text == "None" || v.text == "False") return false;
            return std::nullopt;
        case VK::Dict:
            if (!v.entries.empty()) return true;
            return v.open ? std::nullopt : std::optional<bool>(false);
        case VK::Seq:
            if (!v.items.empty()) return true;
            return v.open ? std::nullopt : std::optional<bool>(false);
        case VK::Function:
        case VK::Class: return true;
        default: return std::nullopt;
    }
}

bool is_ascii_fragments(const std::vector<Fragment>& fr) {
    for (const auto& f : fr)
        if (f.text && !text::is_ascii(*f.text)) return false;
    return true;
}

std::string posix_join(const std::vector<std::string>& parts) {
    std::string out = parts.empty() ? "" : parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) {
        const auto& b = parts[i];
        if (!b.empty() && b[0] == '/')
            out = b;
        else if (out.empty() || out.back() == '/')
            out += b;
        else
            out += "/" + b;
    }
    return out;
}

// Leading identifier of an annotation such as Mapped[int] or sa.Mapped[int].
std::string annotation_head(const Expr* e) {
    while (e) {
        if (e->kind == EK::Name) return e->name;
        if (e->kind == EK::Attribute) return e->name;
        if (e->kind == EK::Subscript) {
            e = e->children[0].get();
            continue;
        }
        if (e->kind == EK::Str && !e->parts.empty()) return e->parts[0].text;
        return "";
    }
    return "";
}

class Walker {
public:
    Walker(DefUseGraph& g, const DefUseOptions& options) : g_(g), options_(options) {}

    void run(const py::Module& module) {
        Frame top;
        top.scope = "module";
        exec_block(module.body, top);
        for (auto& [name, binding] : top.env) g_.module_env[name] = binding.value;

        auto module_env = std::make_shared<Env>(top.env);
        std::vector<Pending> roots;
        for (auto& p : top.nested) {
            p.base = module_env;
            roots.push_back(p);
        }
        // Two rounds so instance attributes assigned in any method are visible in all of them.
        for (int round = 0; round < 2; ++round) {
            if (round == 1) frozen_self_ = collected_self_;
            std::vector<Pending> work = roots;
            for (std::size_t i = 0; i < work.size(); ++i) {
                auto produced = run_function(work[i]);
                work.insert(work.end(), produced.begin(), produced.end());
            }
        }

        g_.edges.clear();
        for (const auto& use : g_.uses)
            for (int d : use.reaching) g_.edges.emplace_back(d, use.id);
        std::sort(g_.edges.begin(), g_.edges.end());
        g_.edges.erase(std::unique(g_.edges.begin(), g_.edges.end()), g_.edges.end());
    }

private:
    struct Binding {
        ValuePtr value;
        std::vector<int> defs;
    };
    using Env = std::map<std::string, Binding>;

    struct Pending {
        const Stmt* def = nullptr;
        std::shared_ptr<Env> base;
        std::string scope;
        int class_id = -1;
    };

    struct Frame {
        Env env;
        std::string scope;
        int class_id = -1;         // class whose method body is being walked
        int class_record = -1;     // class whose body is being walked
        std::vector<Pending> nested;
    };

    // ---- recording ----
    int define(const std::string& name, const ValuePtr& value, const SourceLocation& loc, const void* key,
               Frame& f) {
        auto memo_key = std::make_pair(key, name);
        int id;
        if (auto it = def_ids_.find(memo_key); it != def_ids_.end()) {
            id = it->second;
        } else {
            id = static_cast<int>(g_.defs.size());
            def_ids_[memo_key] = id;
            g_.defs.push_back(DefNode{id, name, f.scope, loc, nullptr});
        }
        g_.defs[id].value = value;
        if (auto t = resolved_text(*value))
            g_.literals[id] = *t;
        else
            g_.literals.erase(id);
        f.env[name] = Binding{value, {id}};
        return id;
    }

    void record_use(const Expr& e, const Frame& f, const std::vector<int>& reaching) {
        int id;
        if (auto it = use_ids_.find(&e); it != use_ids_.end()) {
            id = it->second;
        } else {
            id = static_cast<int>(g_.uses.size());
            use_ids_[&e] = id;
            g_.uses.push_back(UseNode{id, e.name, f.scope, e.location, {}});
        }
        g_.uses[id].reaching = reaching;
    }

    int record_call(const Expr& e, const Frame& f, ValuePtr callee, std::string method, std::vector<ValuePtr> args,
                    std::size_t args_known, bool args_open,
                    std::vector<std::pair<std::string, ValuePtr>> keywords,
                    bool keywords_open) {
        int id;
        if (auto it = call_ids_.find(&e); it != call_ids_.end()) {
            id = it->second;
        } else {
            id = static_cast<int>(g_.calls.size());
            call_ids_[&e] = id;
            g_.calls.emplace_back();
        }
        CallRecord& c = g_.calls[id];
        c.id = id;
        c.location = e.location;
        c.scope = f.scope;
        c.callee = std::move(callee);
        c.method = std::move(method);
        c.args = std::move(args);
        c.args_known = args_known;
        c.args_open = args_open;
        c.keywords = std::move(keywords);
        c.keywords_open = keywords_open;
        return id;
    }

    void record_assignment(const void* key, std::string name, const SourceLocation& loc, const ValuePtr& value) {
        if (auto it = assign_ids_.find(key); it != assign_ids_.end()) {
            g_.assignments[it->second] = AssignRecord{std::move(name), loc, value};
            return;
        }
        assign_ids_[key] = g_.assignments.size();
        g_.assignments.push_back(AssignRecord{std::move(name), loc, value});
    }

    // ---- environment helpers ----
    static Env merge(const Env& a, const Env& b, const SourceLocation& loc) {
        Env out;
        for (const auto& [name, ba] : a) {
            auto it = b.find(name);
            if (it == b.end()) {
                out[name] = Binding{make_hole(loc), ba.defs};
                continue;
            }
            Binding m;
            m.value = phi(ba.value, it->second.value, loc);
            m.defs = ba.defs;
            for (int d : it->second.defs)
                if (std::find(m.defs.begin(), m.defs.end(), d) == m.defs.end()) m.defs.push_back(d);
            std::sort(m.defs.begin(), m.defs.end());
            out[name] = std::move(m);
        }
        for (const auto& [name, bb] : b)
            if (!a.count(name)) out[name] = Binding{make_hole(loc), bb.defs};
        return out;
    }

    static bool same_env(const Env& a, const Env& b) {
        if (a.size() != b.size()) return false;
        for (const auto& [name, ba] : a) {
            auto it = b.find(name);
            if (it == b.end() || ba.defs != it->second.defs) return false;
            const auto& va = ba.value;
            const auto& vb = it->second.value;
            if (va == vb) continue;
            if (va->kind == VK::Hole && vb->kind == VK::Hole) continue;
            if (!same_value(*va, *vb)) return false;
        }
        return true;
    }

    // In-place mutation through `name`; other names bound to the same object see it too.
    void mutate(Frame& f, const std::string& name, const ValuePtr& updated, const SourceLocation& loc,
                const void* key) {
        auto it = f.env.find(name);
        if (it == f.env.end()) return;
        ValuePtr old = it->second.value;
        for (auto& [other, binding] : f.env)
            if (other != name && binding.value == old) binding.value = updated;
        define(name, updated, loc, key, f);
    }

    // ---- functions ----
    std::vector<Pending> run_function(const Pending& p) {
        Frame f;
        f.env = *p.base;
        f.scope = p.scope;
        f.class_id = p.class_id;
        const Stmt& def = *p.def;
        for (std::size_t i = 0; i < def.params.size(); ++i) {
            ValuePtr v;
            if (i == 0 && p.class_id >= 0) {
                auto self = std::make_shared<Value>();
                self->kind = VK::Object;
                self->location = def.location;
                self->qualified = "<self>";
                self->class_id = p.class_id;
                v = self;
            } else {
                v = make_hole(def.location);
            }
            define(def.params[i], v, def.location, &def.params[i], f);
        }
        exec_block(def.body, f);
        auto base = std::make_shared<Env>(f.env);
        for (auto& n : f.nested) n.base = base;
        return f.nested;
    }

    // ---- statements ----
    void exec_block(const std::vector<py::StmtPtr>& body, Frame& f) {
        for (const auto& s : body) exec(*s, f);
    }

    void exec(const Stmt& s, Frame& f) {
        switch (s.kind) {
            case SK::Expr: eval(*s.value, f); break;
            case SK::Assign: {
                ValuePtr v = eval(*s.value, f);
                for (const auto& t : s.targets) assign(*t, v, f, s);
                break;
            }
            case SK::AugAssign: exec_augassign(s, f); break;
            case SK::AnnAssign: {
                ValuePtr v = s.value ? eval(*s.value, f) : nullptr;
                if (f.class_record >= 0 && s.targets[0]->kind == EK::Name) {
                    ClassAttr attr;
                    attr.name = s.targets[0]->name;
                    attr.location = s.targets[0]->location;
                    attr.value = v;
                    attr.annotation_head = annotation_head(s.annotation.get());
                    upsert_class_attr(f.class_record, std::move(attr));
                }
                if (v) assign(*s.targets[0], v, f, s);
                break;
            }
            case SK::Import:
                for (const auto& n : s.names) {
                    std::string local = n.asname.empty() ? n.name.substr(0, n.name.find('.')) : n.asname;
                    std::string qualified = n.asname.empty() ? local : n.name;
                    g_.imports[local] = qualified;
                    define(local, make_global(s.location, qualified), s.location, &n, f);
                }
                break;
            case SK::ImportFrom:
                for (const auto& n : s.names) {
                    if (n.name == "*") continue;
                    std::string local = n.asname.empty() ? n.name : n.asname;
                    std::string module = std::string(static_cast<std::size_t>(s.level), '.') + s.module;
                    std::string qualified = module.empty() ? n.name
                                            : (module.back() == '.' ? module + n.name : module + "." + n.name);
                    g_.imports[local] = qualified;
                    define(local, make_global(s.location, qualified), s.location, &n, f);
                }
                break;
            case SK::ClassDef: exec_class(s, f); break;
            case SK::FunctionDef: {
                for (const auto& d : s.decorators) eval(*d, f);
                auto fn = std::make_shared<Value>();
                fn->kind = VK::Function;
                fn->text = s.name;
                fn->location = s.location;
                define(s.name, fn, s.location, &s, f);
                std::string scope = (f.scope == "module" ? std::string() : f.scope + ".") + s.name;
                int owner = f.class_record;
                f.nested.push_back(Pending{&s, nullptr, "func:" + scope, owner});
                break;
            }
            case SK::If: {
                eval(*s.value, f);
                Frame then_f = branch(f);
                exec_block(s.body, then_f);
                Frame else_f = branch(f);
                exec_block(s.orelse, else_f);
                join_into(f, then_f, else_f, s.location);
                break;
            }
            case SK::While:
            case SK::For: exec_loop(s, f); break;
            case SK::With:
                for (const auto& item : s.items) {
                    ValuePtr v = eval(*item.context, f);
                    if (item.target) assign(*item.target, v, f, s);
                }
                exec_block(s.body, f);
                break;
            case SK::Try: exec_try(s, f); break;
            case SK::Return:
                if (s.value) eval(*s.value, f);
                break;
            case SK::Other:
                if (s.value) eval(*s.value, f);
                break;
        }
    }

    Frame branch(const Frame& f) {
        Frame b;
        b.env = f.env;
        b.scope = f.scope;
        b.class_id = f.class_id;
        b.class_record = f.class_record;
        return b;
    }

    void join_into(Frame& f, Frame& a, Frame& b, const SourceLocation& loc) {
        f.env = merge(a.env, b.env, loc);
        for (auto& n : a.nested) f.nested.push_back(std::move(n));
        for (auto& n : b.nested) f.nested.push_back(std::move(n));
    }

    void exec_loop(const Stmt& s, Frame& f) {
        ValuePtr iter_item;
        if (s.kind == SK::For) {
            ValuePtr it = eval(*s.value, f);
            iter_item = element_of(*it, s.location);
        } else {
            eval(*s.value, f);
        }
        const Env pre = f.env;
        Env entry = pre;
        for (int round = 0; round < kMaxLoopRounds; ++round) {
            Frame body = branch(f);
            body.env = entry;
            if (iter_item) assign(*s.targets[0], iter_item, body, s);
            exec_block(s.body, body);
            Env next = merge(pre, body.env, s.location);
            if (same_env(next, entry)) break;
            entry = std::move(next);
        }
        Frame body = branch(f);
        body.env = entry;
        if (iter_item) assign(*s.targets[0], iter_item, body, s);
        exec_block(s.body, body);
        f.env = merge(pre, body.env, s.location);
        Frame orelse = branch(f);
        exec_block(s.orelse, orelse);
        f.env = orelse.env;
        for (auto& n : body.nested) f.nested.push_back(std::move(n));
        for (auto& n : orelse.nested) f.nested.push_back(std::move(n));
    }

    void exec_try(const Stmt& s, Frame& f) {
        const Env pre = f.env;
        Frame body = branch(f);
        exec_block(s.body, body);
        Env handler_entry = merge(pre, body.env, s.location);
        exec_block(s.orelse, body);
        Env out = body.env;
        for (auto& n : body.nested) f.nested.push_back(std::move(n));
        for (const auto& h : s.handlers) {
            Frame hf = branch(f);
            hf.env = handler_entry;
            if (h.type) eval(*h.type, hf);
            if (!h.name.empty()) define(h.name, make_hole(s.location), s.location, &h, hf);
            exec_block(h.body, hf);
            out = merge(out, hf.env, s.location);
            for (auto& n : hf.nested) f.nested.push_back(std::move(n));
        }
        f.env = std::move(out);
        exec_block(s.finalbody, f);
    }

    void exec_augassign(const Stmt& s, Frame& f) {
        const Expr& target = *s.targets[0];
        ValuePtr rhs = eval(*s.value, f);
        if (target.kind == EK::Name) {
            ValuePtr cur = eval(target, f);
            ValuePtr v = binop(s.op, cur, rhs, s.location);
            assign(target, v, f, s);
            return;
        }
        if (target.kind == EK::Attribute || target.kind == EK::Subscript) eval(*target.children[0], f);
        assign(target, make_hole(s.location), f, s);
    }

    void exec_class(const Stmt& s, Frame& f) {
        int id;
        if (auto it = class_ids_.find(&s); it != class_ids_.end()) {
            id = it->second;
        } else {
            id = static_cast<int>(g_.classes.size());
            class_ids_[&s] = id;
            g_.classes.emplace_back();
        }
        {
            ClassRecord& rec = g_.classes[id];
            rec.id = id;
            rec.name = s.name;
            rec.location = s.location;
            rec.parent = f.class_record;
            rec.attrs.clear();
            rec.bases.clear();
        }
        for (const auto& d : s.decorators) eval(*d, f);
        std::vector<ValuePtr> bases;
        for (const auto& b : s.bases) bases.push_back(eval(*b, f));
        for (const auto& k : s.class_keywords) eval(*k.value, f);
        g_.classes[id].bases = std::move(bases);

        Frame body = branch(f);
        body.scope = "class:" + s.name;
        body.class_record = id;
        exec_block(s.body, body);
        for (auto& n : body.nested) f.nested.push_back(std::move(n));

        auto cls = std::make_shared<Value>();
        cls->kind = VK::Class;
        cls->text = s.name;
        cls->location = s.location;
        cls->class_id = id;
        define(s.name, cls, s.location, &s, f);
    }

    void upsert_class_attr(int class_id, ClassAttr attr) {
        auto& attrs = g_.classes[class_id].attrs;
        for (auto& a : attrs) {
            if (a.name == attr.name) {
                if (!attr.value) attr.value = a.value;
                if (attr.annotation_head.empty()) attr.annotation_head = a.annotation_head;
                a = std::move(attr);
                return;
            }
        }
        attrs.push_back(std::move(attr));
    }

    // ---- assignment ----
    void assign(const Expr& target, const ValuePtr& v, Frame& f, const Stmt& s) {
        switch (target.kind) {
            case EK::Name:
                define(target.name, v, target.location, &target, f);
                if (f.class_record >= 0) {
                    ClassAttr attr;
                    attr.name = target.name;
                    attr.location = target.location;
                    attr.value = v;
                    upsert_class_attr(f.class_record, std::move(attr));
                }
                record_assignment(&target, target.name, target.location, v);
                break;
            case EK::Tuple:
            case EK::List: assign_unpack(target, v, f, s); break;
            case EK::Starred: assign(*target.children[0], make_hole(target.location), f, s); break;
            case EK::Attribute: {
                ValuePtr base = eval(*target.children[0], f);
                if (base->kind == VK::Object && base->qualified == "<self>" && base->steps.empty() &&
                    base->class_id >= 0) {
                    auto& slot = collected_self_[base->class_id][target.name];
                    slot = slot ? phi(slot, v, target.location) : v;
                }
                record_assignment(&target, target.name, target.location, v);
                break;
            }
            case EK::Subscript: {
                const Expr& base_expr = *target.children[0];
                ValuePtr base = eval(base_expr, f);
                ValuePtr key = eval(*target.children[1], f);
                auto key_text = key->kind == VK::Str ? resolved_text(*key) : std::nullopt;
                if (key_text) record_assignment(&target, *key_text, target.location, v);
                if (base_expr.kind != EK::Name) break;
                if (base->kind == VK::Dict) {
                    auto d = std::make_shared<Value>(*base);
                    bool replaced = false;
                    if (key_text) {
                        for (auto& e : d->entries) {
                            auto k = resolved_text(*e.key);
                            if (e.key->kind == VK::Str && k && *k == *key_text) {
                                e.value = v;
                                replaced = true;
                            }
                        }
                        if (!replaced) d->entries.push_back(DictEntry{key, v});
                    } else {
                        d->open = true;
                    }
                    mutate(f, base_expr.name, d, target.location, &target);
                } else if (base->kind == VK::Seq) {
                    auto seq = std::make_shared<Value>(*base);
                    auto idx = int_of(*key);
                    long long n = static_cast<long long>(seq->items.size());
                    if (idx && !seq->open && *idx >= -n && *idx < n)
                        seq->items[static_cast<std::size_t>(*idx < 0 ? *idx + n : *idx)] = v;
                    else
                        seq->open = true;
                    mutate(f, base_expr.name, seq, target.location, &target);
                }
                break;
            }
            default: eval(target, f); break;
        }
    }

    void assign_unpack(const Expr& target, const ValuePtr& v, Frame& f, const Stmt& s) {
        const auto& elts = target.children;
        std::size_t star = elts.size();
        for (std::size_t i = 0; i < elts.size(); ++i)
            if (elts[i]->kind == EK::Starred) star = i;
        const bool exact = v->kind == VK::Seq && !v->open &&
                           (star == elts.size() ? v->items.size() == elts.size()
                                                : v->items.size() + 1 >= elts.size());
        if (!exact) {
            for (const auto& e : elts) assign(*e, make_hole(e->location), f, s);
            return;
        }
        if (star == elts.size()) {
            for (std::size_t i = 0; i < elts.size(); ++i) assign(*elts[i], v->items[i], f, s);
            return;
        }
        const std::size_t after = elts.size() - star - 1;
        for (std::size_t i = 0; i < star; ++i) assign(*elts[i], v->items[i], f, s);
        auto rest = std::make_shared<Value>();
        rest->kind = VK::Seq;
        rest->location = elts[star]->location;
        for (std::size_t i = star; i < v->items.size() - after; ++i) rest->items.push_back(v->items[i]);
        assign(*elts[star]->children[0], rest, f, s);
        for (std::size_t i = 0; i < after; ++i)
            assign(*elts[star + 1 + i], v->items[v->items.size() - after + i], f, s);
    }

    // ---- expressions ----
    ValuePtr eval(const Expr& e, Frame& f) {
        switch (e.kind) {
            case EK::Name: {
                auto it = f.env.find(e.name);
                if (it == f.env.end()) {
                    record_use(e, f, {});
                    return make_global(e.location, e.name);
                }
                record_use(e, f, it->second.defs);
                return it->second.value;
            }
            case EK::Attribute: return eval_attribute(e, f);
            case EK::Subscript: return eval_subscript(e, f);
            case EK::Call: return eval_call(e, f);
            case EK::Str: return eval_string(e, f);
            case EK::Bytes: return make_hole(e.location);
            case EK::Num: {
                if (auto v = parse_python_int(e.name)) return make_int(e.location, *v);
                return make_num(e.location, e.name, false);
            }
            case EK::Const: return make_const(e.location, e.name);
            case EK::BinOp: {
                ValuePtr l = eval(*e.children[0], f);
                ValuePtr r = eval(*e.children[1], f);
                return binop(e.op, l, r, e.location);
            }
            case EK::UnaryOp: {
                ValuePtr v = eval(*e.children[0], f);
                if (e.op == "-") {
                    if (auto i = int_of(*v); i && *i != std::numeric_limits<long long>::min())
                        return make_int(e.location, -*i);
                }
                if (e.op == "+" && v->kind == VK::Num && v->is_int) return v;
                if (e.op == "not") {
                    if (auto t = truthiness(*v)) return make_const(e.location, *t ? "False" : "True");
                }
                return make_hole(e.location);
            }
            case EK::BoolOp: return eval_boolop(e, f);
            case EK::Compare:
                for (const auto& c : e.children) eval(*c, f);
                return make_hole(e.location);
            case EK::IfExp: {
                ValuePtr test = eval(*e.children[1], f);
                ValuePtr body = eval(*e.children[0], f);
                ValuePtr orelse = eval(*e.children[2], f);
                if (auto t = truthiness(*test)) return *t ? body : orelse;
                return phi(body, orelse, e.location);
            }
            case EK::Dict: return eval_dict(e, f);
            case EK::List:
            case EK::Tuple: {
                auto seq = std::make_shared<Value>();
                seq->kind = VK::Seq;
                seq->location = e.location;
                seq->is_tuple = e.kind == EK::Tuple;
                for (const auto& c : e.children) {
                    if (c->kind == EK::Starred) {
                        ValuePtr inner = eval(*c->children[0], f);
                        if (inner->kind == VK::Seq && !inner->open)
                            seq->items.insert(seq->items.end(), inner->items.begin(), inner->items.end());
                        else
                            seq->open = true;
                        continue;
                    }
                    seq->items.push_back(eval(*c, f));
                }
                return seq;
            }
            case EK::Set:
                for (const auto& c : e.children) eval(*c, f);
                return make_hole(e.location);
            case EK::Starred:
            case EK::DoubleStarred:
                eval(*e.children[0], f);
                return make_hole(e.location);
            case EK::Await: return eval(*e.children[0], f);
            case EK::NamedExpr: {
                ValuePtr v = eval(*e.children[1], f);
                if (e.children[0]->kind == EK::Name)
                    define(e.children[0]->name, v, e.children[0]->location, e.children[0].get(), f);
                return v;
            }
            case EK::Slice:
                for (const auto& c : e.children)
                    if (c) eval(*c, f);
                return make_hole(e.location);
            case EK::Other: return make_hole(e.location);
        }
        return make_hole(e.location);
    }

    ValuePtr eval_string(const Expr& e, Frame& f) {
        std::vector<Fragment> out;
        for (const auto& p : e.parts) {
            if (!p.is_field) {
                out.push_back(Fragment{p.location, p.text});
                continue;
            }
            ValuePtr v = p.expr ? eval(*p.expr, f) : make_hole(p.location);
            if (p.has_spec || (p.conversion != 0 && p.conversion != 's')) {
                out.push_back(Fragment{p.location, std::nullopt});
                continue;
            }
            auto fr = string_fragments(*v, p.location);
            out.insert(out.end(), fr.begin(), fr.end());
        }
        if (out.empty()) out.push_back(Fragment{e.location, std::string()});
        return make_str(std::move(out), e.location);
    }

    ValuePtr eval_boolop(const Expr& e, Frame& f) {
        const bool is_or = e.op == "or";
        ValuePtr result = eval(*e.children[0], f);
        std::vector<ValuePtr> candidates;
        for (std::size_t i = 1; i < e.children.size(); ++i) {
            auto t = truthiness(*result);
            if (t && *t == is_or) {
                // Short-circuit: the remaining operands are not evaluated.
                break;
            }
            if (!t) candidates.push_back(result);
            result = eval(*e.children[i], f);
        }
        for (const auto& c : candidates) result = phi(c, result, e.location);
        return result;
    }

    ValuePtr eval_dict(const Expr& e, Frame& f) {
        auto d = std::make_shared<Value>();
        d->kind = VK::Dict;
        d->location = e.location;
        for (std::size_t i = 0; i + 1 < e.children.size(); i += 2) {
            if (!e.children[i]) {
                ValuePtr inner = eval(*e.children[i + 1], f);
                if (inner->kind == VK::Dict) {
                    for (const auto& entry : inner->entries) dict_set(*d, entry.key, entry.value);
                    d->open = d->open || inner->open;
                } else {
                    d->open = true;
                }
                continue;
            }
            ValuePtr k = eval(*e.children[i], f);
            ValuePtr v = eval(*e.children[i + 1], f);
            dict_set(*d, k, v);
        }
        return d;
    }

    static void dict_set(Value& d, const ValuePtr& k, const ValuePtr& v) {
        auto kt = k->kind == VK::Str ? resolved_text(*k) : std::nullopt;
        if (kt) {
            for (auto& entry : d.entries) {
                auto et = entry.key->kind == VK::Str ? resolved_text(*entry.key) : std::nullopt;
                if (et && *et == *kt) {
                    entry.value = v;
                    return;
                }
            }
        }
        d.entries.push_back(DictEntry{k, v});
    }

    ValuePtr attribute_of(const ValuePtr& base, const std::string& attr, const SourceLocation& loc) {
        if (base->kind == VK::Object) {
            if (base->origin_call < 0 && base->steps.empty() && base->class_id < 0 && !base->qualified.empty())
                return make_global(loc, base->qualified + "." + attr);
            if (base->class_id >= 0 && base->steps.empty()) {
                if (auto v = class_member(base->class_id, attr, true)) return v;
            }
            auto d = std::make_shared<Value>(*base);
            d->location = loc;
            d->class_id = -1;
            d->steps.push_back(Step{Step::Kind::Attr, attr, -1});
            return d;
        }
        if (base->kind == VK::Class) {
            if (auto v = class_member(base->class_id, attr, false)) return v;
        }
        return make_hole(loc);
    }

    ValuePtr class_member(int class_id, const std::string& attr, bool instance) {
        if (instance) {
            auto it = frozen_self_.find(class_id);
            if (it != frozen_self_.end()) {
                auto a = it->second.find(attr);
                if (a != it->second.end()) return a->second;
            }
            auto c = collected_self_.find(class_id);
            if (c != collected_self_.end()) {
                auto a = c->second.find(attr);
                if (a != c->second.end()) return a->second;
            }
        }
        if (class_id >= 0 && class_id < static_cast<int>(g_.classes.size())) {
            for (const auto& a : g_.classes[class_id].attrs)
                if (a.name == attr && a.value) return a.value;
        }
        return nullptr;
    }

    ValuePtr eval_attribute(const Expr& e, Frame& f) {
        ValuePtr base = eval(*e.children[0], f);
        return attribute_of(base, e.name, e.location);
    }

    ValuePtr eval_subscript(const Expr& e, Frame& f) {
        ValuePtr base = eval(*e.children[0], f);
        const Expr& index = *e.children[1];
        if (index.kind == EK::Slice) {
            eval(index, f);
            return make_hole(e.location);
        }
        ValuePtr key = eval(index, f);
        return subscript_of(base, key, e.location);
    }

    ValuePtr subscript_of(const ValuePtr& base, const ValuePtr& key, const SourceLocation& loc) {
        switch (base->kind) {
            case VK::Dict: {
                if (key->kind != VK::Str) return make_hole(loc);
                auto kt = resolved_text(*key);
                if (!kt) return make_hole(loc);
                auto v = dict_lookup(*base, *kt, loc, nullptr);
                return v ? v : make_hole(loc);
            }
            case VK::Seq: {
                auto idx = int_of(*key);
                long long n = static_cast<long long>(base->items.size());
                if (!idx || base->open || *idx < -n || *idx >= n) return make_hole(loc);
                return base->items[static_cast<std::size_t>(*idx < 0 ? *idx + n : *idx)];
            }
            case VK::Str: {
                auto idx = int_of(*key);
                auto t = resolved_text(*base);
                if (!idx || !t || !text::is_ascii(*t)) return make_hole(loc);
                long long n = static_cast<long long>(t->size());
                if (*idx < -n || *idx >= n) return make_hole(loc);
                return make_str(loc, std::string(1, (*t)[static_cast<std::size_t>(*idx < 0 ? *idx + n : *idx)]));
            }
            case VK::Object: {
                auto d = std::make_shared<Value>(*base);
                d->location = loc;
                d->class_id = -1;
                auto kt = key->kind == VK::Str ? resolved_text(*key) : std::nullopt;
                d->steps.push_back(Step{Step::Kind::Item, kt.value_or(""), -1});
                return d;
            }
            default: return make_hole(loc);
        }
    }

    struct Args {
        std::vector<ValuePtr> positional;
        std::size_t known = 0;
        bool positional_open = false;
        std::vector<std::pair<std::string, ValuePtr>> keywords;
        bool keywords_open = false;
    };

    Args eval_args(const Expr& call, Frame& f) {
        Args a;
        for (std::size_t i = 1; i < call.children.size(); ++i) {
            const Expr& c = *call.children[i];
            if (c.kind == EK::Starred) {
                ValuePtr inner = eval(*c.children[0], f);
                if (inner->kind == VK::Seq && !inner->open && !a.positional_open) {
                    a.positional.insert(a.positional.end(), inner->items.begin(), inner->items.end());
                } else {
                    a.positional_open = true;
                }
                continue;
            }
            a.positional.push_back(eval(c, f));
            if (!a.positional_open) a.known = a.positional.size();
        }
        for (const auto& kw : call.keywords) {
            ValuePtr v = eval(*kw.value, f);
            if (!kw.name.empty()) {
                a.keywords.emplace_back(kw.name, v);
                continue;
            }
            if (v->kind == VK::Dict && !v->open) {
                bool ok = true;
                for (const auto& entry : v->entries) {
                    auto k = entry.key->kind == VK::Str ? resolved_text(*entry.key) : std::nullopt;
                    if (!k) {
                        ok = false;
                        continue;
                    }
                    a.keywords.emplace_back(*k, entry.value);
                }
                if (!ok) a.keywords_open = true;
            } else {
                a.keywords_open = true;
            }
        }
        return a;
    }

    ValuePtr eval_call(const Expr& e, Frame& f) {
        const Expr& func = *e.children[0];
        if (func.kind == EK::Attribute) {
            ValuePtr receiver = eval(*func.children[0], f);
            if (receiver->kind == VK::Str || receiver->kind == VK::Dict || receiver->kind == VK::Seq ||
                receiver->kind == VK::Num) {
                Args a = eval_args(e, f);
                return builtin_method(e, func, receiver, a, f);
            }
            ValuePtr callee = attribute_of(receiver, func.name, func.location);
            return finish_call(e, callee, func.name, f);
        }
        ValuePtr callee = eval(func, f);
        return finish_call(e, callee, "", f);
    }

    ValuePtr finish_call(const Expr& e, const ValuePtr& callee, const std::string& method, Frame& f) {
        Args a = eval_args(e, f);
        std::string qualified;
        if (callee->kind == VK::Object && callee->origin_call < 0 && callee->steps.empty() && callee->class_id < 0)
            qualified = callee->qualified;

        int id = record_call(e, f, callee, method, a.positional, a.known, a.positional_open, a.keywords,
                             a.keywords_open);

        if (!qualified.empty()) {
            if (options_.passthrough.count(qualified) && !a.positional.empty()) return a.positional[0];
            if (auto v = builtin_function(qualified, a, e.location)) return v;
        }
        switch (callee->kind) {
            case VK::Function: return make_hole(e.location);
            case VK::Class: {
                auto inst = std::make_shared<Value>();
                inst->kind = VK::Object;
                inst->location = e.location;
                inst->origin_call = id;
                inst->class_id = callee->class_id;
                return inst;
            }
            case VK::Object: {
                auto obj = std::make_shared<Value>();
                obj->kind = VK::Object;
                obj->location = e.location;
                obj->origin_call = id;
                return obj;
            }
            default: return make_hole(e.location);
        }
    }

    ValuePtr builtin_function(const std::string& name, const Args& a, const SourceLocation& loc) {
        const bool exact = !a.positional_open && !a.keywords_open;
        if (name == "str") {
            if (!exact || !a.keywords.empty() || a.positional.size() > 1) return make_hole(loc);
            if (a.positional.empty()) return make_str(loc, "");
            const Value& v = *a.positional[0];
            if (v.kind == VK::Str) return a.positional[0];
            if ((v.kind == VK::Num && v.is_int) || v.kind == VK::Const)
                return make_str(string_fragments(v, loc), loc);
            return make_hole(loc);
        }
        if (name == "int") {
            if (!exact || !a.keywords.empty() || a.positional.size() != 1) return make_hole(loc);
            const Value& v = *a.positional[0];
            if (v.kind == VK::Num && v.is_int) return a.positional[0];
            if (auto t = resolved_text(v); t && v.kind == VK::Str) {
                std::string s(text::trim(*t));
                bool neg = false;
                if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
                    neg = s[0] == '-';
                    s = s.substr(1);
                }
                bool digits = !s.empty() && std::isdigit(static_cast<unsigned char>(s.front())) &&
                              std::isdigit(static_cast<unsigned char>(s.back()));
                for (std::size_t i = 0; i < s.size() && digits; ++i) {
                    if (s[i] == '_' && i + 1 < s.size() && s[i + 1] != '_') continue;
                    if (!std::isdigit(static_cast<unsigned char>(s[i]))) digits = false;
                }
                if (digits) {
                    std::string plain;
                    for (char c : s)
                        if (c != '_') plain.push_back(c);
                    while (plain.size() > 1 && plain[0] == '0') plain.erase(0, 1);
                    if (auto n = parse_python_int(plain)) return make_int(loc, neg ? -*n : *n);
                }
            }
            return make_hole(loc);
        }
        if (name == "dict") {
            auto d = std::make_shared<Value>();
            d->kind = VK::Dict;
            d->location = loc;
            d->open = !exact || a.positional.size() > 1;
            if (a.positional.size() == 1) {
                if (a.positional[0]->kind == VK::Dict) {
                    d->entries = a.positional[0]->entries;
                    d->open = d->open || a.positional[0]->open;
                } else {
                    return make_hole(loc);
                }
            }
            for (const auto& [k, v] : a.keywords) dict_set(*d, make_str(loc, k), v);
            return d;
        }
        if (name == "list" || name == "tuple") {
            if (!exact || !a.keywords.empty() || a.positional.size() > 1) return make_hole(loc);
            auto seq = std::make_shared<Value>();
            seq->kind = VK::Seq;
            seq->location = loc;
            seq->is_tuple = name == "tuple";
            if (a.positional.empty()) return seq;
            if (a.positional[0]->kind != VK::Seq) return make_hole(loc);
            seq->items = a.positional[0]->items;
            seq->open = a.positional[0]->open;
            return seq;
        }
        if (name == "os.path.join" || name == "posixpath.join") {
            if (!exact || !a.keywords.empty() || a.positional.empty()) return make_hole(loc);
            std::vector<std::string> parts;
            for (const auto& p : a.positional) {
                if (p->kind != VK::Str) return make_hole(loc);
                auto t = resolved_text(*p);
                if (!t) return make_hole(loc);
                parts.push_back(*t);
            }
            return make_str(loc, posix_join(parts));
        }
        return nullptr;
    }

    // Rebinds the receiver name after an in-place container update.
    void rebind_receiver(const Expr& func, const ValuePtr& updated, Frame& f) {
        const Expr& recv = *func.children[0];
        if (recv.kind == EK::Name) mutate(f, recv.name, updated, func.location, &func);
    }

    ValuePtr builtin_method(const Expr& call, const Expr& func, const ValuePtr& recv, const Args& a, Frame& f) {
        const std::string& m = func.name;
        const SourceLocation& loc = call.location;
        const bool exact = !a.positional_open && !a.keywords_open;

        if (recv->kind == VK::Str) {
            if (!exact) return make_hole(loc);
            if ((m == "upper" || m == "lower") && a.positional.empty() && a.keywords.empty()) {
                if (!is_ascii_fragments(recv->fragments)) return make_hole(loc);
                auto fr = recv->fragments;
                for (auto& piece : fr)
                    if (piece.text) *piece.text = m == "upper" ? text::to_upper_ascii(*piece.text)
                                                               : text::to_lower_ascii(*piece.text);
                return make_str(std::move(fr), loc);
            }
            if ((m == "strip" || m == "lstrip" || m == "rstrip") && a.keywords.empty() && a.positional.size() <= 1) {
                auto t = resolved_text(*recv);
                if (!t || !text::is_ascii(*t)) return make_hole(loc);
                std::string chars = " \t\n\r\x0b\x0c\x1c\x1d\x1e\x1f";
                if (a.positional.size() == 1) {
                    if (a.positional[0]->kind == VK::Const && a.positional[0]->text == "None") {
                    } else {
                        auto c = a.positional[0]->kind == VK::Str ? resolved_text(*a.positional[0]) : std::nullopt;
                        if (!c || !text::is_ascii(*c)) return make_hole(loc);
                        chars = *c;
                    }
                }
                std::string s = *t;
                if (m != "rstrip") {
                    auto p = s.find_first_not_of(chars);
                    s = p == std::string::npos ? "" : s.substr(p);
                }
                if (m != "lstrip") {
                    auto p = s.find_last_not_of(chars);
                    s = p == std::string::npos ? "" : s.substr(0, p + 1);
                }
                return make_str(loc, s);
            }
            if (m == "replace" && a.keywords.empty() && a.positional.size() == 2) {
                auto t = resolved_text(*recv);
                auto from = a.positional[0]->kind == VK::Str ? resolved_text(*a.positional[0]) : std::nullopt;
                auto to = a.positional[1]->kind == VK::Str ? resolved_text(*a.positional[1]) : std::nullopt;
                if (!t || !from || !to || from->empty()) return make_hole(loc);
                std::string s = *t;
                std::string out;
                std::size_t pos = 0;
                for (;;) {
                    auto hit = s.find(*from, pos);
                    if (hit == std::string::npos) break;
                    out += s.substr(pos, hit - pos) + *to;
                    pos = hit + from->size();
                }
                out += s.substr(pos);
                return make_str(loc, out);
            }
            if (m == "format") return format_method(*recv, a, loc);
            if (m == "join" && a.keywords.empty() && a.positional.size() == 1) {
                const Value& seq = *a.positional[0];
                if (seq.kind != VK::Seq || seq.open) return make_hole(loc);
                std::vector<Fragment> out;
                for (std::size_t i = 0; i < seq.items.size(); ++i) {
                    const Value& item = *seq.items[i];
                    if (item.kind != VK::Str) return make_hole(loc);
                    if (i) out.insert(out.end(), recv->fragments.begin(), recv->fragments.end());
                    out.insert(out.end(), item.fragments.begin(), item.fragments.end());
                }
                if (out.empty()) out.push_back(Fragment{loc, std::string()});
                return make_str(std::move(out), loc);
            }
            return make_hole(loc);
        }

        if (recv->kind == VK::Dict) {
            if (m == "get" && exact && a.keywords.empty() && !a.positional.empty() && a.positional.size() <= 2) {
                auto k = a.positional[0]->kind == VK::Str ? resolved_text(*a.positional[0]) : std::nullopt;
                if (!k) return make_hole(loc);
                bool found = false;
                auto v = dict_lookup(*recv, *k, loc, &found);
                if (found) return v;
                if (!v) return a.positional.size() == 2 ? a.positional[1] : make_const(loc, "None");
                return make_hole(loc);
            }
            if (m == "copy" && a.positional.empty()) {
                return std::make_shared<Value>(*recv);
            }
            if (m == "update") {
                auto d = std::make_shared<Value>(*recv);
                if (!exact || a.positional.size() > 1) d->open = true;
                if (a.positional.size() == 1) {
                    if (a.positional[0]->kind == VK::Dict) {
                        for (const auto& entry : a.positional[0]->entries) dict_set(*d, entry.key, entry.value);
                        d->open = d->open || a.positional[0]->open;
                    } else {
                        d->open = true;
                    }
                }
                for (const auto& [k, v] : a.keywords) dict_set(*d, make_str(loc, k), v);
                rebind_receiver(func, d, f);
                return make_const(loc, "None");
            }
            if (m == "keys" || m == "values" || m == "items" || m == "__getitem__") return make_hole(loc);
            auto d = std::make_shared<Value>(*recv);
            d->open = true;
            rebind_receiver(func, d, f);
            return make_hole(loc);
        }

        if (recv->kind == VK::Seq) {
            if (m == "append" && exact && a.positional.size() == 1 && a.keywords.empty() && !recv->is_tuple) {
                auto seq = std::make_shared<Value>(*recv);
                seq->items.push_back(a.positional[0]);
                rebind_receiver(func, seq, f);
                return make_const(loc, "None");
            }
            if (m == "extend" && exact && a.positional.size() == 1 && a.keywords.empty() && !recv->is_tuple) {
                auto seq = std::make_shared<Value>(*recv);
                if (a.positional[0]->kind == VK::Seq && !a.positional[0]->open)
                    seq->items.insert(seq->items.end(), a.positional[0]->items.begin(), a.positional[0]->items.end());
                else
                    seq->open = true;
                rebind_receiver(func, seq, f);
                return make_const(loc, "None");
            }
            if (m == "index" || m == "count" || recv->is_tuple) return make_hole(loc);
            auto seq = std::make_shared<Value>(*recv);
            seq->open = true;
            rebind_receiver(func, seq, f);
            return make_hole(loc);
        }
        return make_hole(loc);
    }

    ValuePtr format_method(const Value& fmt, const Args& a, const SourceLocation& loc) {
        auto t = resolved_text(fmt);
        if (!t || a.positional_open || a.keywords_open) return make_hole(loc);
        const SourceLocation lit_loc = fmt.fragments.empty() ? loc : fmt.fragments.front().location;
        const std::string& s = *t;
        std::vector<Fragment> out;
        std::string literal;
        int auto_index = 0;
        bool used_auto = false;
        bool used_manual = false;
        auto flush = [&] {
            if (!literal.empty()) out.push_back(Fragment{lit_loc, literal});
            literal.clear();
        };
        for (std::size_t i = 0; i < s.size(); ++i) {
            char c = s[i];
            if (c == '{' && i + 1 < s.size() && s[i + 1] == '{') {
                literal.push_back('{');
                ++i;
                continue;
            }
            if (c == '}' && i + 1 < s.size() && s[i + 1] == '}') {
                literal.push_back('}');
                ++i;
                continue;
            }
            if (c == '}') return make_hole(loc);
            if (c != '{') {
                literal.push_back(c);
                continue;
            }
            auto close = s.find('}', i + 1);
            if (close == std::string::npos) return make_hole(loc);
            std::string field = s.substr(i + 1, close - i - 1);
            if (field.find('{') != std::string::npos) return make_hole(loc);
            i = close;
            bool hole = false;
            auto colon = field.find(':');
            if (colon != std::string::npos) {
                hole = hole || colon + 1 < field.size();
                field = field.substr(0, colon);
            }
            auto bang = field.find('!');
            if (bang != std::string::npos) {
                std::string conv = field.substr(bang + 1);
                if (conv != "s" && conv != "r" && conv != "a") return make_hole(loc);
                hole = hole || conv != "s";
                field = field.substr(0, bang);
            }
            ValuePtr arg;
            if (field.empty()) {
                used_auto = true;
                if (auto_index >= static_cast<int>(a.positional.size())) return make_hole(loc);
                arg = a.positional[static_cast<std::size_t>(auto_index++)];
            } else if (std::all_of(field.begin(), field.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
                used_manual = true;
                std::size_t idx = static_cast<std::size_t>(std::stoul(field));
                if (idx >= a.positional.size()) return make_hole(loc);
                arg = a.positional[idx];
            } else {
                if (field.find_first_of(".[") != std::string::npos) {
                    hole = true;
                } else {
                    for (const auto& [k, v] : a.keywords)
                        if (k == field) arg = v;
                    if (!arg) return make_hole(loc);
                }
            }
            if (used_auto && used_manual) return make_hole(loc);
            flush();
            if (hole || !arg) {
                out.push_back(Fragment{loc, std::nullopt});
            } else {
                auto fr = string_fragments(*arg, loc);
                out.insert(out.end(), fr.begin(), fr.end());
            }
        }
        flush();
        if (out.empty()) out.push_back(Fragment{lit_loc, std::string()});
        return make_str(std::move(out), loc);
    }

    ValuePtr percent_format(const Value& fmt, const ValuePtr& args, const SourceLocation& loc) {
        auto t = resolved_text(fmt);
        if (!t) return make_hole(loc);
        const SourceLocation lit_loc = fmt.fragments.empty() ? loc : fmt.fragments.front().location;
        const std::string& s = *t;
        std::vector<ValuePtr> positional;
        const Value* mapping = nullptr;
        if (args->kind == VK::Seq && args->is_tuple) {
            if (args->open) return make_hole(loc);
            positional = args->items;
        } else if (args->kind == VK::Dict) {
            mapping = args.get();
            positional.push_back(args);
        } else if (args->kind == VK::Hole || args->kind == VK::Object) {
            return make_hole(loc);
        } else {
            positional.push_back(args);
        }
        std::vector<Fragment> out;
        std::string literal;
        std::size_t next = 0;
        bool used_mapping = false;
        auto flush = [&] {
            if (!literal.empty()) out.push_back(Fragment{lit_loc, literal});
            literal.clear();
        };
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] != '%') {
                literal.push_back(s[i]);
                continue;
            }
            if (++i >= s.size()) return make_hole(loc);
            if (s[i] == '%') {
                literal.push_back('%');
                continue;
            }
            ValuePtr arg;
            if (s[i] == '(') {
                auto close = s.find(')', i);
                if (close == std::string::npos || !mapping || mapping->open) return make_hole(loc);
                std::string key = s.substr(i + 1, close - i - 1);
                bool found = false;
                arg = dict_lookup(*mapping, key, loc, &found);
                if (!found) return make_hole(loc);
                used_mapping = true;
                i = close + 1;
                if (i >= s.size()) return make_hole(loc);
            }
            bool modified = false;
            while (i < s.size() && std::string_view("-+ #0123456789.*").find(s[i]) != std::string_view::npos) {
                modified = true;
                if (s[i] == '*') return make_hole(loc);
                ++i;
            }
            while (i < s.size() && (s[i] == 'h' || s[i] == 'l' || s[i] == 'L')) ++i;
            if (i >= s.size()) return make_hole(loc);
            char conv = s[i];
            if (std::string_view("sdiurxXoeEfFgGca").find(conv) == std::string_view::npos) return make_hole(loc);
            if (!arg) {
                if (next >= positional.size()) return make_hole(loc);
                arg = positional[next++];
            }
            flush();
            bool ok = !modified;
            std::vector<Fragment> piece;
            if (ok && conv == 's') {
                piece = string_fragments(*arg, loc);
            } else if (ok && (conv == 'd' || conv == 'i' || conv == 'u') && arg->kind == VK::Num && arg->is_int) {
                piece = string_fragments(*arg, loc);
            } else {
                piece = {Fragment{loc, std::nullopt}};
            }
            out.insert(out.end(), piece.begin(), piece.end());
        }
        if (!used_mapping && next != positional.size()) {
            // Python raises for unused arguments, except a mapping passed whole.
            if (!(mapping && next == 0)) return make_hole(loc);
        }
        flush();
        if (out.empty()) out.push_back(Fragment{lit_loc, std::string()});
        return make_str(std::move(out), loc);
    }

    ValuePtr binop(const std::string& op, const ValuePtr& l, const ValuePtr& r, const SourceLocation& loc) {
        const bool l_unknown = l->kind == VK::Hole || l->kind == VK::Object;
        const bool r_unknown = r->kind == VK::Hole || r->kind == VK::Object;
        if (op == "+") {
            if (l->kind == VK::Str && r->kind == VK::Str) {
                auto fr = l->fragments;
                fr.insert(fr.end(), r->fragments.begin(), r->fragments.end());
                return make_str(std::move(fr), loc);
            }
            if (l->kind == VK::Str && r_unknown) {
                auto fr = l->fragments;
                fr.push_back(Fragment{r->location, std::nullopt});
                return make_str(std::move(fr), loc);
            }
            if (l_unknown && r->kind == VK::Str) {
                std::vector<Fragment> fr{Fragment{l->location, std::nullopt}};
                fr.insert(fr.end(), r->fragments.begin(), r->fragments.end());
                return make_str(std::move(fr), loc);
            }
            if (l->kind == VK::Seq && r->kind == VK::Seq && l->is_tuple == r->is_tuple) {
                auto seq = std::make_shared<Value>(*l);
                seq->items.insert(seq->items.end(), r->items.begin(), r->items.end());
                seq->open = l->open || r->open;
                return seq;
            }
        }
        if (op == "%" && l->kind == VK::Str) return percent_format(*l, r, loc);
        if (op == "*") {
            const Value* str = l->kind == VK::Str ? l.get() : (r->kind == VK::Str ? r.get() : nullptr);
            const Value* num = l->kind == VK::Num ? l.get() : (r->kind == VK::Num ? r.get() : nullptr);
            if (str && num) {
                auto n = int_of(*num);
                auto t = resolved_text(*str);
                if (!n || !t || static_cast<unsigned long long>(std::max(0LL, *n)) * t->size() > kMaxRepeatLength)
                    return make_hole(loc);
                std::string out;
                for (long long i = 0; i < *n; ++i) out += *t;
                return make_str(loc, out);
            }
        }
        auto a = int_of(*l);
        auto b = int_of(*r);
        if (a && b) {
            const long long x = *a;
            const long long y = *b;
            long long z = 0;
            bool ok = false;
            if (op == "+") ok = !__builtin_add_overflow(x, y, &z);
            if (op == "-") ok = !__builtin_sub_overflow(x, y, &z);
            if (op == "*") ok = !__builtin_mul_overflow(x, y, &z);
            if ((op == "//" || op == "%") && y != 0 && !(x == std::numeric_limits<long long>::min() && y == -1)) {
                long long q = x / y;
                long long m = x % y;
                if (m != 0 && ((m < 0) != (y < 0))) {
                    --q;
                    m += y;
                }
                z = op == "//" ? q : m;
                ok = true;
            }
            if (ok) return make_int(loc, z);
        }
        return make_hole(loc);
    }

    ValuePtr element_of(const Value& it, const SourceLocation& loc) {
        if (it.kind == VK::Seq && !it.open && !it.items.empty()) {
            ValuePtr acc = it.items[0];
            for (std::size_t i = 1; i < it.items.size(); ++i) acc = phi(acc, it.items[i], loc);
            return acc;
        }
        if (it.kind == VK::Dict && !it.open && !it.entries.empty()) {
            ValuePtr acc = it.entries[0].key;
            for (std::size_t i = 1; i < it.entries.size(); ++i) acc = phi(acc, it.entries[i].key, loc);
            return acc;
        }
        return make_hole(loc);
    }

    DefUseGraph& g_;
    const DefUseOptions& options_;
    std::map<std::pair<const void*, std::string>, int> def_ids_;
    std::map<const Expr*, int> use_ids_;
    std::map<const Expr*, int> call_ids_;
    std::map<const void*, int> class_ids_;
    std::map<const void*, std::size_t> assign_ids_;
    std::map<int, std::map<std::string, ValuePtr>> collected_self_;
    std::map<int, std::map<std::string, ValuePtr>> frozen_self_;
};

}  // namespace

const CallRecord* DefUseGraph::call(int id) const {
    if (id < 0 || id >= static_cast<int>(calls.size())) return nullptr;
    return &calls[static_cast<std::size_t>(id)];
}

const CallRecord* DefUseGraph::call_at(int line) const {
    for (const auto& c : calls)
        if (c.location.line == line) return &c;
    return nullptr;
}

ValuePtr DefUseGraph::final_value(const std::string& name) const {
    auto it = module_env.find(name);
    return it == module_env.end() ? nullptr : it->second;
}

const DefNode* DefUseGraph::definition(const std::string& name, int line) const {
    const DefNode* best = nullptr;
    for (const auto& d : defs) {
        if (d.name != name || d.location.line > line) continue;
        if (!best || best->location < d.location) best = &d;
    }
    return best;
}

ObjectChain DefUseGraph::chain_of(const Value& object) const {
    std::set<int> seen;
    std::function<ObjectChain(const Value&)> walk = [&](const Value& v) -> ObjectChain {
        if (v.origin_call < 0) return ObjectChain{-1, v.qualified, v.steps};
        const CallRecord* c = call(v.origin_call);
        if (!c || !c->callee || c->callee->kind != VK::Object || !seen.insert(v.origin_call).second)
            return ObjectChain{v.origin_call, "", v.steps};
        const Value& callee = *c->callee;
        if (callee.origin_call < 0 && callee.steps.empty()) return ObjectChain{v.origin_call, "", v.steps};
        ObjectChain base = walk(callee);
        base.steps.push_back(Step{Step::Kind::Call, "", v.origin_call});
        base.steps.insert(base.steps.end(), v.steps.begin(), v.steps.end());
        return base;
    };
    return walk(object);
}

std::string DefUseGraph::callee_name(const CallRecord& c) const {
    if (!c.callee || c.callee->kind != VK::Object) return "";
    if (c.callee->origin_call >= 0 || !c.callee->steps.empty() || c.callee->class_id >= 0) return "";
    return c.callee->qualified;
}

DefUseGraph build_def_use(const py::Module& module, const DefUseOptions& options) {
    DefUseGraph g;
    g.path = module.path;
    Walker(g, options).run(module);
    return g;
}

}  // namespace secrisk::flow
