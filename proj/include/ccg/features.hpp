#ifndef CCG_FEATURES_HPP
#define CCG_FEATURES_HPP

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ccg {

using Gen = std::uint64_t;

// Attribute-value graph node.  A node is either atomic (non-empty value),
// complex (attribute arcs), or empty (unifies with anything).  The scratch
// slots (forward, comp_arcs, copy) are only meaningful when their generation
// stamp equals the live generation of the owning UnifyContext.
struct FsNode {
  std::string value;
  std::vector<std::pair<std::string, FsNode*>> arcs;

  // unification scratch
  FsNode* forward = nullptr;
  Gen forward_gen = 0;
  std::vector<std::pair<std::string, FsNode*>> comp_arcs;
  Gen comp_gen = 0;
  FsNode* copy = nullptr;
  Gen copy_gen = 0;

  bool atomic() const { return !value.empty(); }
};

// Generation counter owned by one in-flight parse (or one test).  Bumping
// the counter invalidates every scratch slot at once.  Generations are
// drawn from a process-wide monotonic source: nodes can outlive any one
// context (lexicon entries, goal categories), and a fresh context must
// never mistake another context's stale scratch for its own.
class UnifyContext {
 public:
  UnifyContext() : gen_(next()) {}
  Gen current() const { return gen_; }
  void invalidate() { gen_ = next(); }

 private:
  static Gen next();
  Gen gen_;
};

// A rooted DAG of FsNodes.  The structure owns its nodes; copies are deep
// and preserve internal sharing (reentrancy).
class FeatureStructure {
 public:
  FeatureStructure();
  FeatureStructure(const FeatureStructure& other);
  FeatureStructure& operator=(const FeatureStructure& other);
  FeatureStructure(FeatureStructure&&) = default;
  FeatureStructure& operator=(FeatureStructure&&) = default;

  FsNode* root() const { return root_; }
  FsNode* new_node();

  // Flat convenience: set attr to an atomic value on the root.
  // Throws std::runtime_error on a duplicate attribute.
  void set(const std::string& attr, const std::string& value);
  void set_child(FsNode* parent, const std::string& attr, FsNode* child);

  // Atomic value at a flat attribute of the root, if present.
  std::optional<std::string> get(const std::string& attr) const;

  bool empty() const { return !root_->atomic() && root_->arcs.empty(); }

  // Flat (attr, value) pairs on the root, insertion order.
  std::vector<std::pair<std::string, std::string>> flat() const;

  // Copy out the structure reachable from `from`, folding in any scratch
  // alterations valid under ctx.  Used to materialize unification results.
  static FeatureStructure capture(FsNode* from, const UnifyContext& ctx);

 private:
  mutable std::deque<FsNode> pool_;
  FsNode* root_;

  FsNode* adopt(const FsNode* src,
                std::unordered_map<const FsNode*, FsNode*>& seen);
};

struct Clash {
  std::string path;   // dotted attribute path from the roots
  std::string left;   // atomic value (or "{...}" for a complex node)
  std::string right;
};

struct UnifyOutcome {
  std::optional<FeatureStructure> result;
  std::optional<Clash> clash;
  bool ok() const { return result.has_value(); }
};

// Quasi-destructive unification.  Both operands are observably unchanged
// after the call; on success the result is a fresh structure.  Advances the
// context generation exactly once (at completion, invalidating scratch).
UnifyOutcome unify(const FeatureStructure& a, const FeatureStructure& b,
                   UnifyContext& ctx);

// Canonical text form ignoring scratch; isomorphic structures (including
// their sharing pattern) produce identical strings.
std::string canonical_form(const FeatureStructure& fs);
std::string canonical_form(const FsNode* root);

std::uint64_t snapshot_hash(const FeatureStructure& fs);

namespace detail {
// Non-invalidating core used by category unification: leaves scratch in
// place so several node pairs can be unified in a single generation.
FsNode* deref(FsNode* n, Gen g);
bool unify_nodes(FsNode* a, FsNode* b, const UnifyContext& ctx,
                 std::vector<std::string>& path, std::optional<Clash>& clash);
}  // namespace detail

}  // namespace ccg

#endif
