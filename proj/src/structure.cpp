#include "kaylab/structure.hpp"

#include <algorithm>
#include <stdexcept>

namespace kaylab {

std::string to_string(SymbolKind k) {
    switch (k) {
        case SymbolKind::hyperedge: return "hyperedge";
        case SymbolKind::order: return "order";
        case SymbolKind::plain: return "plain";
    }
    return "?";
}

SymbolKind symbol_kind_from_string(const std::string& s) {
    if (s == "hyperedge") return SymbolKind::hyperedge;
    if (s == "order") return SymbolKind::order;
    if (s == "plain") return SymbolKind::plain;
    throw std::invalid_argument("unknown symbol kind: " + s);
}

Signature::Signature(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
    int orders = 0;
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        const Symbol& s = symbols_[i];
        if (s.name.empty()) throw std::invalid_argument("signature: empty symbol name");
        if (s.arity <= 0) throw std::invalid_argument("signature: arity must be positive");
        if (s.kind == SymbolKind::order) {
            if (s.arity != 2) throw std::invalid_argument("signature: order symbols have arity 2");
            if (++orders > 1) throw std::invalid_argument("signature: at most one order symbol");
        }
        for (std::size_t j = 0; j < i; ++j)
            if (symbols_[j].name == s.name)
                throw std::invalid_argument("signature: duplicate symbol name " + s.name);
    }
}

int Signature::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < symbols_.size(); ++i)
        if (symbols_[i].name == name) return static_cast<int>(i);
    return -1;
}

std::optional<int> Signature::order_symbol() const {
    for (std::size_t i = 0; i < symbols_.size(); ++i)
        if (symbols_[i].kind == SymbolKind::order) return static_cast<int>(i);
    return std::nullopt;
}

Structure::Structure(Signature sig, int size, std::vector<std::vector<Tuple>> relations)
    : sig_(std::move(sig)), size_(size), rels_(std::move(relations)) {
    if (size_ < 0) throw std::invalid_argument("structure: negative size");
    rels_.resize(sig_.symbol_count());
    for (int s = 0; s < sig_.symbol_count(); ++s) {
        const Symbol& sym = sig_.symbols()[s];
        auto& ts = rels_[s];
        if (sym.kind == SymbolKind::order) {
            if (!ts.empty())
                throw std::invalid_argument("structure: order relation is implicit; no tuples accepted");
            continue;
        }
        for (auto& t : ts) {
            if (static_cast<int>(t.size()) != sym.arity)
                throw std::invalid_argument("structure: tuple arity mismatch for " + sym.name);
            for (int v : t)
                if (v < 0 || v >= size_)
                    throw std::invalid_argument("structure: tuple entry out of range for " + sym.name);
            if (sym.kind == SymbolKind::hyperedge) {
                std::sort(t.begin(), t.end());
                for (std::size_t i = 1; i < t.size(); ++i)
                    if (t[i] == t[i - 1])
                        throw std::invalid_argument("structure: hyperedge tuple for " + sym.name +
                                                    " has repeated entries");
            }
        }
        std::sort(ts.begin(), ts.end());
        ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    }
}

const std::vector<Tuple>& Structure::tuples(int sym) const { return rels_[sym]; }

std::vector<Tuple> Structure::materialized_tuples(int sym) const {
    if (sig_.kind(sym) != SymbolKind::order) return rels_[sym];
    std::vector<Tuple> out;
    for (int i = 0; i < size_; ++i)
        for (int j = i + 1; j < size_; ++j) out.push_back({i, j});
    return out;
}

bool Structure::has(int sym, const Tuple& t) const {
    if (sig_.kind(sym) == SymbolKind::order) {
        return t.size() == 2 && t[0] < t[1] && t[0] >= 0 && t[1] < size_;
    }
    if (sig_.kind(sym) == SymbolKind::hyperedge) {
        Tuple s = t;
        std::sort(s.begin(), s.end());
        return std::binary_search(rels_[sym].begin(), rels_[sym].end(), s);
    }
    return std::binary_search(rels_[sym].begin(), rels_[sym].end(), t);
}

Structure Structure::induced(const std::vector<int>& domain_subset) const {
    std::vector<int> d = domain_subset;
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    std::vector<int> where(size_, -1);
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] < 0 || d[i] >= size_)
            throw std::invalid_argument("induced: element out of range");
        where[d[i]] = static_cast<int>(i);
    }
    std::vector<std::vector<Tuple>> out(sig_.symbol_count());
    for (int s = 0; s < sig_.symbol_count(); ++s) {
        if (sig_.kind(s) == SymbolKind::order) continue;
        for (const Tuple& t : rels_[s]) {
            Tuple img(t.size());
            bool inside = true;
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (where[t[i]] < 0) { inside = false; break; }
                img[i] = where[t[i]];
            }
            if (inside) out[s].push_back(std::move(img));
        }
    }
    return Structure(sig_, static_cast<int>(d.size()), std::move(out));
}

Structure Structure::relabelled(const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != size_)
        throw std::invalid_argument("relabelled: permutation size mismatch");
    std::vector<char> seen(size_, 0);
    for (int v : perm) {
        if (v < 0 || v >= size_ || seen[v]) throw std::invalid_argument("relabelled: not a permutation");
        seen[v] = 1;
    }
    if (ordered())
        for (int v = 0; v + 1 < size_; ++v)
            if (perm[v] >= perm[v + 1])
                throw std::invalid_argument("relabelled: ordered structures admit only the identity relabelling");
    std::vector<std::vector<Tuple>> out(sig_.symbol_count());
    for (int s = 0; s < sig_.symbol_count(); ++s) {
        if (sig_.kind(s) == SymbolKind::order) continue;
        out[s].reserve(rels_[s].size());
        for (const Tuple& t : rels_[s]) {
            Tuple img(t.size());
            for (std::size_t i = 0; i < t.size(); ++i) img[i] = perm[t[i]];
            out[s].push_back(std::move(img));
        }
    }
    return Structure(sig_, size_, std::move(out));
}

int Structure::compare(const Structure& a, const Structure& b) {
    if (a.size_ != b.size_) return a.size_ < b.size_ ? -1 : 1;
    if (!(a.sig_ == b.sig_)) {
        // signatures rarely differ in one listing; fall back to symbol names
        return a.sig_.symbols().size() < b.sig_.symbols().size() ? -1 : 1;
    }
    if (a.rels_ != b.rels_) return a.rels_ < b.rels_ ? -1 : 1;
    return 0;
}

Signature hypergraph_signature(int k, bool ordered, const std::string& name) {
    std::vector<Symbol> syms{{name, k, SymbolKind::hyperedge}};
    if (ordered) syms.push_back({"<=", 2, SymbolKind::order});
    return Signature(std::move(syms));
}

Signature kay_signature(int k, bool ordered) {
    return hypergraph_signature(k + 1, ordered, "S");
}

Signature expanded_signature(int k, bool ordered) {
    std::vector<Symbol> syms{{"R", k, SymbolKind::hyperedge}, {"S", k + 1, SymbolKind::hyperedge}};
    if (ordered) syms.push_back({"<=", 2, SymbolKind::order});
    return Signature(std::move(syms));
}

Structure chain(int n) {
    return Structure(Signature({{"<=", 2, SymbolKind::order}}), n, {{}});
}

Structure hypergraph(int n, int k, const std::vector<Tuple>& edges, bool ordered,
                     const std::string& name) {
    std::vector<std::vector<Tuple>> rels;
    rels.push_back(edges);
    if (ordered) rels.push_back({});
    return Structure(hypergraph_signature(k, ordered, name), n, std::move(rels));
}

}  // namespace kaylab
