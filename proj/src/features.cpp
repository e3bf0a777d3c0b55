#include "ccg/features.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ccg {

Gen UnifyContext::next() {
  static std::atomic<Gen> counter{0};
  return ++counter;
}

FeatureStructure::FeatureStructure() { root_ = new_node(); }

FeatureStructure::FeatureStructure(const FeatureStructure& other) {
  std::unordered_map<const FsNode*, FsNode*> seen;
  root_ = adopt(other.root_, seen);
}

FeatureStructure& FeatureStructure::operator=(const FeatureStructure& other) {
  if (this != &other) {
    pool_.clear();
    std::unordered_map<const FsNode*, FsNode*> seen;
    root_ = adopt(other.root_, seen);
  }
  return *this;
}

FsNode* FeatureStructure::new_node() {
  pool_.emplace_back();
  return &pool_.back();
}

FsNode* FeatureStructure::adopt(
    const FsNode* src, std::unordered_map<const FsNode*, FsNode*>& seen) {
  auto it = seen.find(src);
  if (it != seen.end()) return it->second;
  FsNode* dst = new_node();
  seen.emplace(src, dst);
  dst->value = src->value;
  for (const auto& [attr, child] : src->arcs)
    dst->arcs.emplace_back(attr, adopt(child, seen));
  return dst;
}

void FeatureStructure::set(const std::string& attr, const std::string& value) {
  FsNode* leaf = new_node();
  leaf->value = value;
  set_child(root_, attr, leaf);
}

void FeatureStructure::set_child(FsNode* parent, const std::string& attr,
                                 FsNode* child) {
  for (const auto& [a, _] : parent->arcs)
    if (a == attr)
      throw std::runtime_error("duplicate attribute '" + attr + "'");
  parent->arcs.emplace_back(attr, child);
}

std::optional<std::string> FeatureStructure::get(
    const std::string& attr) const {
  for (const auto& [a, child] : root_->arcs)
    if (a == attr && child->atomic()) return child->value;
  return std::nullopt;
}

std::vector<std::pair<std::string, std::string>> FeatureStructure::flat()
    const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [a, child] : root_->arcs)
    if (child->atomic()) out.emplace_back(a, child->value);
  return out;
}

namespace detail {

FsNode* deref(FsNode* n, Gen g) {
  while (n->forward_gen == g && n->forward) n = n->forward;
  return n;
}

static FsNode* arc_find(FsNode* n, const std::string& attr, Gen g) {
  for (auto& [a, child] : n->arcs)
    if (a == attr) return child;
  if (n->comp_gen == g)
    for (auto& [a, child] : n->comp_arcs)
      if (a == attr) return child;
  return nullptr;
}

static void comp_add(FsNode* n, const std::string& attr, FsNode* child,
                     Gen g) {
  if (n->comp_gen != g) {
    n->comp_arcs.clear();
    n->comp_gen = g;
  }
  n->comp_arcs.emplace_back(attr, child);
}

static std::string join_path(const std::vector<std::string>& path) {
  std::string s;
  for (const auto& p : path) {
    if (!s.empty()) s += '.';
    s += p;
  }
  return s;
}

bool unify_nodes(FsNode* a, FsNode* b, const UnifyContext& ctx,
                 std::vector<std::string>& path,
                 std::optional<Clash>& clash) {
  const Gen g = ctx.current();
  a = deref(a, g);
  b = deref(b, g);
  if (a == b) return true;

  if (a->atomic() && b->atomic()) {
    if (a->value != b->value) {
      clash = Clash{join_path(path), a->value, b->value};
      return false;
    }
    b->forward = a;
    b->forward_gen = g;
    return true;
  }

  if (a->atomic() != b->atomic()) {
    FsNode* atom = a->atomic() ? a : b;
    FsNode* cmplx = a->atomic() ? b : a;
    bool cmplx_empty =
        cmplx->arcs.empty() && (cmplx->comp_gen != g || cmplx->comp_arcs.empty());
    if (cmplx_empty) {
      cmplx->forward = atom;
      cmplx->forward_gen = g;
      return true;
    }
    clash = Clash{join_path(path), a->atomic() ? a->value : "{...}",
                  b->atomic() ? b->value : "{...}"};
    return false;
  }

  // both complex: forward b into a, then merge b's arcs
  b->forward = a;
  b->forward_gen = g;
  auto merge_arc = [&](const std::string& attr, FsNode* child) {
    FsNode* existing = arc_find(a, attr, g);
    if (existing) {
      path.push_back(attr);
      bool ok = unify_nodes(existing, child, ctx, path, clash);
      path.pop_back();
      return ok;
    }
    comp_add(a, attr, child, g);
    return true;
  };
  // b->comp_arcs snapshot: merging never mutates b after the forward
  for (auto& [attr, child] : b->arcs)
    if (!merge_arc(attr, child)) return false;
  if (b->comp_gen == g)
    for (auto& [attr, child] : b->comp_arcs)
      if (!merge_arc(attr, child)) return false;
  return true;
}

}  // namespace detail

FeatureStructure FeatureStructure::capture(FsNode* from,
                                           const UnifyContext& ctx) {
  const Gen g = ctx.current();
  FeatureStructure out;
  std::function<FsNode*(FsNode*)> copy_rec = [&](FsNode* n) -> FsNode* {
    n = detail::deref(n, g);
    if (n->copy_gen == g && n->copy) return n->copy;
    FsNode* c = out.new_node();
    n->copy = c;
    n->copy_gen = g;
    c->value = n->value;
    for (auto& [attr, child] : n->arcs)
      c->arcs.emplace_back(attr, copy_rec(child));
    if (n->comp_gen == g)
      for (auto& [attr, child] : n->comp_arcs)
        c->arcs.emplace_back(attr, copy_rec(child));
    return c;
  };
  FsNode* r = copy_rec(from);
  // splice the copied graph under the pre-made root
  *out.root_ = *r;
  // fix self-references to r (possible only via arcs; acyclic, so none)
  return out;
}

UnifyOutcome unify(const FeatureStructure& a, const FeatureStructure& b,
                   UnifyContext& ctx) {
  UnifyOutcome out;
  std::vector<std::string> path;
  std::optional<Clash> clash;
  if (detail::unify_nodes(a.root(), b.root(), ctx, path, clash)) {
    out.result = FeatureStructure::capture(a.root(), ctx);
  } else {
    out.clash = clash;
  }
  ctx.invalidate();
  return out;
}

static void canon_rec(const FsNode* n, std::map<const FsNode*, int>& ids,
                      std::string& out) {
  auto it = ids.find(n);
  if (it != ids.end()) {
    out += '#';
    out += std::to_string(it->second);
    return;
  }
  ids.emplace(n, static_cast<int>(ids.size()));
  if (n->atomic()) {
    out += n->value;
    return;
  }
  std::vector<std::pair<std::string, const FsNode*>> arcs(n->arcs.begin(),
                                                          n->arcs.end());
  std::sort(arcs.begin(), arcs.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  out += '{';
  bool first = true;
  for (const auto& [attr, child] : arcs) {
    if (!first) out += ',';
    first = false;
    out += attr;
    out += '=';
    canon_rec(child, ids, out);
  }
  out += '}';
}

std::string canonical_form(const FsNode* root) {
  std::map<const FsNode*, int> ids;
  std::string out;
  canon_rec(root, ids, out);
  return out;
}

std::string canonical_form(const FeatureStructure& fs) {
  return canonical_form(fs.root());
}

std::uint64_t snapshot_hash(const FeatureStructure& fs) {
  return std::hash<std::string>{}(canonical_form(fs));
}

}  // namespace ccg
