#include "secrisk/keywords/orm_extract.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>

#include "secrisk/common/text.hpp"

namespace secrisk {

namespace {

using flow::Step;
using flow::Value;

std::string leaf_of(const std::string& qualified) {
    const auto dot = qualified.rfind('.');
    return dot == std::string::npos ? qualified : qualified.substr(dot + 1);
}

// Last attribute name of the callee, whether it is a global or hangs off an object.
std::string callee_leaf(const flow::CallRecord& call) {
    if (!call.callee || call.callee->kind != Value::Kind::Object) return "";
    if (!call.callee->steps.empty()) {
        const Step& last = call.callee->steps.back();
        return last.kind == Step::Kind::Attr ? last.name : "";
    }
    return leaf_of(call.callee->qualified);
}

bool is_true(const flow::ValuePtr& v) { return v && v->kind == Value::Kind::Const && v->text == "True"; }

const std::map<std::string, std::string>& known_roots() {
    static const std::map<std::string, std::string> k = {
        {"sqlalchemy.orm.DeclarativeBase", "sqlalchemy"},
        {"sqlalchemy.orm.DeclarativeBaseNoMeta", "sqlalchemy"},
        {"peewee.Model", "peewee"},
        {"playhouse.signals.Model", "peewee"},
        {"django.db.models.Model", "django"},
    };
    return k;
}

bool is_declarative_factory(const std::string& qualified) {
    return text::starts_with_icase(qualified, "sqlalchemy.") &&
           (leaf_of(qualified) == "declarative_base" || leaf_of(qualified) == "as_declarative");
}

bool is_column_constructor(const std::string& leaf) {
    return leaf == "Column" || leaf == "mapped_column" || leaf == "ForeignKey" ||
           (leaf.size() > 5 && text::ends_with_icase(leaf, "Field") && std::isupper(static_cast<unsigned char>(leaf[0])));
}

struct ClassKey {
    std::size_t graph;
    int id;
    auto operator<=>(const ClassKey&) const = default;
};

class Registry {
public:
    explicit Registry(const std::vector<const flow::DefUseGraph*>& graphs) : graphs_(graphs) {
        for (const auto* g : graphs_) {
            for (const auto& [name, v] : g->module_env) {
                if (!v || v->kind != Value::Kind::Object || v->origin_call < 0 || !v->steps.empty()) continue;
                const auto* call = g->call(v->origin_call);
                if (!call) continue;
                const std::string callee = g->callee_name(*call);
                if (is_declarative_factory(callee)) names_[name] = "sqlalchemy";
                if (callee == "flask_sqlalchemy.SQLAlchemy") sqlalchemy_instances_.insert(name);
            }
        }
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t gi = 0; gi < graphs_.size(); ++gi) {
                for (const auto& c : graphs_[gi]->classes) {
                    const ClassKey key{gi, c.id};
                    if (models_.count(key)) continue;
                    for (const auto& b : c.bases) {
                        if (!b) continue;
                        if (auto fam = family_of_base(gi, *b)) {
                            models_[key] = *fam;
                            names_.emplace(c.name, *fam);
                            changed = true;
                            break;
                        }
                    }
                }
            }
        }
        // Which model classes are themselves used as bases.
        for (std::size_t gi = 0; gi < graphs_.size(); ++gi) {
            for (const auto& c : graphs_[gi]->classes) {
                if (!models_.count({gi, c.id})) continue;
                for (const auto& b : c.bases) {
                    if (!b) continue;
                    if (b->kind == Value::Kind::Class && b->class_id >= 0) subclassed_.insert({gi, b->class_id});
                    if (b->kind == Value::Kind::Object && b->origin_call < 0 && b->steps.empty())
                        subclassed_names_.insert(leaf_of(b->qualified));
                    if (b->kind == Value::Kind::Object && b->origin_call < 0 && b->steps.empty() &&
                        known_roots().count(b->qualified) && text::starts_with_icase(b->qualified, "sqlalchemy."))
                        declared_bases_.insert({gi, c.id});
                }
            }
        }
    }

    std::optional<std::string> family(std::size_t gi, int class_id) const {
        auto it = models_.find({gi, class_id});
        if (it == models_.end()) return std::nullopt;
        return it->second;
    }
    bool subclassed(std::size_t gi, const flow::ClassRecord& c) const {
        return subclassed_.count({gi, c.id}) || subclassed_names_.count(c.name);
    }
    bool declared_base(std::size_t gi, int class_id) const { return declared_bases_.count({gi, class_id}) > 0; }

private:
    std::optional<std::string> family_of_base(std::size_t gi, const Value& b) const {
        const auto* g = graphs_[gi];
        if (b.kind == Value::Kind::Class) {
            if (b.class_id >= 0) {
                auto it = models_.find({gi, b.class_id});
                if (it != models_.end()) return it->second;
            }
            return std::nullopt;
        }
        if (b.kind != Value::Kind::Object) return std::nullopt;
        const bool model_attr = b.steps.size() == 1 && b.steps[0].kind == Step::Kind::Attr && b.steps[0].name == "Model";
        if (b.origin_call >= 0) {
            const auto* call = g->call(b.origin_call);
            if (!call) return std::nullopt;
            const std::string callee = g->callee_name(*call);
            if (b.steps.empty() && is_declarative_factory(callee)) return "sqlalchemy";
            if (model_attr && callee == "flask_sqlalchemy.SQLAlchemy") return "sqlalchemy";
            return std::nullopt;
        }
        std::string full = b.qualified;
        for (const auto& s : b.steps) {
            if (s.kind != Step::Kind::Attr) return std::nullopt;
            full += "." + s.name;
        }
        if (auto it = known_roots().find(full); it != known_roots().end()) return it->second;
        if (model_attr && sqlalchemy_instances_.count(leaf_of(b.qualified))) return "sqlalchemy";
        // `from app import db` then `db.Model`: the attribute is folded into the name.
        if (b.steps.empty() && text::ends_with_icase(full, ".Model") &&
            sqlalchemy_instances_.count(leaf_of(full.substr(0, full.size() - 6))))
            return "sqlalchemy";
        if (b.steps.empty()) {
            if (auto it = names_.find(leaf_of(b.qualified)); it != names_.end()) return it->second;
        }
        return std::nullopt;
    }

    const std::vector<const flow::DefUseGraph*>& graphs_;
    std::map<std::string, std::string> names_;  // leaf name of a base or model -> family
    std::set<std::string> sqlalchemy_instances_;
    std::map<ClassKey, std::string> models_;
    std::set<ClassKey> subclassed_;
    std::set<std::string> subclassed_names_;
    std::set<ClassKey> declared_bases_;
};

const flow::ClassRecord* meta_of(const flow::DefUseGraph& g, int class_id) {
    for (const auto& c : g.classes)
        if (c.parent == class_id && c.name == "Meta") return &c;
    return nullptr;
}

std::optional<std::string> attr_text(const flow::ClassRecord& c, const std::string& name) {
    for (const auto& a : c.attrs)
        if (a.name == name && a.value) return flow::resolved_text(*a.value);
    return std::nullopt;
}

bool attr_true(const flow::ClassRecord& c, const std::string& name) {
    for (const auto& a : c.attrs)
        if (a.name == name && is_true(a.value)) return true;
    return false;
}

// Column name of a class attribute, or nothing when it is not a column.
std::optional<std::string> column_of(const flow::DefUseGraph& g, const flow::ClassAttr& a) {
    if (a.name.empty() || text::starts_with_icase(a.name, "__")) return std::nullopt;
    const flow::CallRecord* call = nullptr;
    if (a.value && a.value->kind == Value::Kind::Object && a.value->origin_call >= 0 && a.value->steps.empty())
        call = g.call(a.value->origin_call);
    const std::string leaf = call ? callee_leaf(*call) : "";
    const bool constructor = call && is_column_constructor(leaf);
    if (!constructor && !(a.annotation_head == "Mapped" && !a.value)) return std::nullopt;
    if (!call) return a.name;
    for (const auto& [k, v] : call->keywords) {
        if ((k == "db_column" || k == "column_name" || k == "name") && v) {
            if (auto t = flow::resolved_text(*v); t && !t->empty()) return t;
        }
    }
    if ((leaf == "Column" || leaf == "mapped_column") && !call->args.empty() && call->args[0] &&
        call->args[0]->kind == Value::Kind::Str) {
        if (auto t = flow::resolved_text(*call->args[0]); t && !t->empty()) return t;
    }
    return a.name;
}

void add_unique(std::vector<std::string>& v, const std::string& s) {
    if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
}

}  // namespace

std::vector<OrmModel> extract_orm_models(const std::vector<const flow::DefUseGraph*>& graphs, Diagnostics& diags) {
    std::vector<OrmModel> out;
    const Registry reg(graphs);
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
        const auto& g = *graphs[gi];
        for (const auto& c : g.classes) {
            const auto family = reg.family(gi, c.id);
            if (!family) continue;
            const auto* meta = meta_of(g, c.id);
            if (attr_true(c, "__abstract__") || (meta && attr_true(*meta, "abstract")) || reg.declared_base(gi, c.id))
                continue;

            OrmModel m;
            m.family = *family;
            m.class_name = c.name;
            m.location = c.location;
            for (const auto& a : c.attrs)
                if (auto col = column_of(g, a)) add_unique(m.columns, *col);

            std::optional<std::string> table = attr_text(c, "__tablename__");
            if (!table && meta) table = attr_text(*meta, "table_name");
            if (!table && meta) table = attr_text(*meta, "db_table");
            // A model without columns or a table name that others inherit from is a shared base.
            if (!table && m.columns.empty() && reg.subclassed(gi, c)) continue;
            if (!table) {
                const bool declared = std::any_of(c.attrs.begin(), c.attrs.end(),
                                                  [](const auto& a) { return a.name == "__tablename__"; });
                if (declared) diags.info("keywords", "table name of model " + c.name + " is computed", c.location);
                table = text::to_lower_ascii(c.name);
            }
            m.table = *table;
            out.push_back(std::move(m));
        }
        // SQLAlchemy Core: Table("name", metadata, Column("col", ...), ...)
        for (const auto& call : g.calls) {
            const std::string callee = g.callee_name(call);
            if (!text::starts_with_icase(callee, "sqlalchemy.") || leaf_of(callee) != "Table") continue;
            if (call.args.empty() || !call.args[0]) continue;
            const auto name = flow::resolved_text(*call.args[0]);
            if (!name || name->empty()) continue;
            OrmModel m;
            m.family = "sqlalchemy";
            m.location = call.location;
            m.table = *name;
            for (std::size_t i = 1; i < call.args.size(); ++i) {
                const auto& arg = call.args[i];
                if (!arg || arg->kind != Value::Kind::Object || arg->origin_call < 0) continue;
                const auto* col = g.call(arg->origin_call);
                if (!col || callee_leaf(*col) != "Column" || col->args.empty() || !col->args[0]) continue;
                if (auto cn = flow::resolved_text(*col->args[0]); cn && !cn->empty()) add_unique(m.columns, *cn);
            }
            out.push_back(std::move(m));
        }
    }
    return out;
}

}  // namespace secrisk
