#ifndef MTROOT_MATGROUP_HPP_
#define MTROOT_MATGROUP_HPP_

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "mtroot/matrix.hpp"
#include "mtroot/numeric.hpp"
#include "mtroot/perm.hpp"

namespace mtroot {

inline bool mat_is_identity(const IMat& m) {
  for (int i = 0; i < mat_rows(m); ++i)
    for (int j = 0; j < mat_cols(m); ++j)
      if (m[i][j] != Int(i == j ? 1 : 0)) return false;
  return true;
}

// Group of integer matrices acting on column vectors, with a Schreier--Sims
// chain over vector base points.  Scales to the Weyl groups met here
// (order up to a few million with small orbits).
class MatGroup {
 public:
  MatGroup() : dim_(0) {}
  MatGroup(int dim, std::vector<IMat> gens, std::vector<Vec> base_hints = {})
      : dim_(dim), gens_(std::move(gens)), hints_(std::move(base_hints)) {
    for (const auto& g : gens_)
      check(mat_rows(g) == dim_ && mat_cols(g) == dim_, errc::bad_input,
            "generator dimension mismatch");
    std::sort(gens_.begin(), gens_.end());
    gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
    build();
  }

  int dim() const { return dim_; }
  const std::vector<IMat>& generators() const { return gens_; }
  const Int& order() const { return order_; }

  bool contains(const IMat& g) const {
    IMat h = g;
    size_t lev = sift(h);
    return lev == base_.size() && mat_is_identity(h);
  }

  bool is_subgroup_of(const MatGroup& other) const {
    for (const auto& g : gens_)
      if (!other.contains(g)) return false;
    return true;
  }

  std::vector<Vec> orbit_of(const Vec& v) const {
    std::vector<Vec> orb = {v};
    std::set<Vec> seen = {v};
    for (size_t i = 0; i < orb.size(); ++i)
      for (const auto& g : gens_) {
        Vec y = mat_vec(g, orb[i]);
        if (seen.insert(y).second) orb.push_back(y);
      }
    std::sort(orb.begin(), orb.end());
    return orb;
  }

  // orbits of the group on a finite invariant vector set
  std::vector<std::vector<Vec>> orbits_on(const std::vector<Vec>& points) const {
    std::set<Vec> remaining(points.begin(), points.end());
    std::vector<std::vector<Vec>> out;
    while (!remaining.empty()) {
      Vec seed = *remaining.begin();
      auto orb = orbit_of(seed);
      for (const auto& v : orb) {
        check(remaining.erase(v) == 1, errc::internal, "vector set is not invariant");
      }
      out.push_back(orb);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    });
    return out;
  }

  // the permutation action on an invariant, duplicate-free vector list
  PermGroup action_on(const std::vector<Vec>& points) const {
    std::map<Vec, int> idx;
    for (size_t i = 0; i < points.size(); ++i) idx[points[i]] = static_cast<int>(i);
    check(idx.size() == points.size(), errc::internal, "duplicate points in action");
    std::vector<Perm> pgens;
    for (const auto& g : gens_) {
      Perm p(points.size());
      for (size_t i = 0; i < points.size(); ++i) {
        auto it = idx.find(mat_vec(g, points[i]));
        check(it != idx.end(), errc::internal, "vector set is not invariant");
        p[i] = it->second;
      }
      pgens.push_back(p);
    }
    return PermGroup(static_cast<int>(points.size()), pgens);
  }

  std::vector<IMat> elements(unsigned long cap = 200000) const {
    check(order_ <= Int(cap), errc::internal, "matrix group too large to enumerate");
    std::vector<IMat> out = {identity_mat(dim_)};
    std::set<IMat> seen(out.begin(), out.end());
    for (size_t i = 0; i < out.size(); ++i)
      for (const auto& g : gens_) {
        IMat h = mat_mul(g, out[i]);
        if (seen.insert(h).second) out.push_back(h);
      }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  struct Entry {
    IMat u, uinv;
  };

  Vec pick_base_point(const IMat& g) const {
    for (const auto& h : hints_)
      if (mat_vec(g, h) != h) return h;
    for (int j = 0; j < dim_; ++j) {
      Vec e(dim_, Int(0));
      e[j] = 1;
      if (mat_vec(g, e) != e) return e;
    }
    fail(errc::internal, "generator fixes every candidate base vector");
  }

  std::vector<Entry> strong_at(size_t k) const {
    std::vector<Entry> out;
    for (const auto& g : strong_) {
      bool ok = true;
      for (size_t j = 0; j < k && ok; ++j)
        if (mat_vec(g.u, base_[j]) != base_[j]) ok = false;
      if (ok) out.push_back(g);
    }
    return out;
  }

  void insert_strong(const IMat& g) {
    size_t j = 0;
    while (j < base_.size() && mat_vec(g, base_[j]) == base_[j]) ++j;
    if (j == base_.size()) {
      base_.push_back(pick_base_point(g));
      transversal_.emplace_back();
    }
    strong_.push_back(Entry{g, inverse_unimodular(g)});
  }

  void rebuild_orbit(size_t k, const std::vector<Entry>& gens_k) {
    auto& tr = transversal_[k];
    tr.clear();
    tr[base_[k]] = Entry{identity_mat(dim_), identity_mat(dim_)};
    std::vector<Vec> frontier = {base_[k]};
    for (size_t i = 0; i < frontier.size(); ++i)
      for (const auto& s : gens_k) {
        Vec y = mat_vec(s.u, frontier[i]);
        if (!tr.count(y)) {
          const Entry& e = tr.at(frontier[i]);
          tr[y] = Entry{mat_mul(s.u, e.u), mat_mul(e.uinv, s.uinv)};
          frontier.push_back(y);
        }
      }
  }

  size_t sift_from(IMat& h, size_t start) const {
    for (size_t lev = start; lev < base_.size(); ++lev) {
      Vec y = mat_vec(h, base_[lev]);
      auto it = transversal_[lev].find(y);
      if (it == transversal_[lev].end()) return lev;
      h = mat_mul(it->second.uinv, h);
    }
    return base_.size();
  }

  size_t sift(IMat& h) const { return sift_from(h, 0); }

  void build() {
    base_.clear();
    transversal_.clear();
    strong_.clear();
    for (const auto& g : gens_)
      if (!mat_is_identity(g)) insert_strong(g);
    if (!base_.empty()) {
      size_t i = base_.size() - 1;
      while (true) {
        auto gens_i = strong_at(i);
        rebuild_orbit(i, gens_i);
        std::vector<Vec> pts;
        for (const auto& [pt, u] : transversal_[i]) pts.push_back(pt);
        bool complete = true;
        for (size_t xi = 0; xi < pts.size() && complete; ++xi) {
          for (const auto& s : gens_i) {
            const Entry& ux = transversal_[i].at(pts[xi]);
            const Entry& uy = transversal_[i].at(mat_vec(s.u, pts[xi]));
            IMat schreier = mat_mul(uy.uinv, mat_mul(s.u, ux.u));
            if (mat_is_identity(schreier)) continue;
            IMat h = schreier;
            size_t j = sift_from(h, i + 1);
            if (mat_is_identity(h)) continue;
            insert_strong(h);
            for (size_t l = i + 1; l <= std::min(j, base_.size() - 1); ++l)
              rebuild_orbit(l, strong_at(l));
            i = std::min(j, base_.size() - 1);
            complete = false;
            break;
          }
        }
        if (complete) {
          if (i == 0) break;
          --i;
        }
      }
    }
    order_ = 1;
    for (const auto& t : transversal_) order_ *= Int(static_cast<unsigned long>(t.size()));
  }

  int dim_;
  std::vector<IMat> gens_;
  std::vector<Vec> hints_;
  Int order_ = 1;
  std::vector<Vec> base_;
  std::vector<Entry> strong_;
  std::vector<std::map<Vec, Entry>> transversal_;
};

}  // namespace mtroot

#endif
