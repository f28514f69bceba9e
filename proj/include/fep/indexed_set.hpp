#pragma once

#include <cstddef>
#include <vector>

namespace fep {

/// Subset of {0..capacity-1} with O(1) insert, erase and uniform pick.
class IndexedSet {
public:
    explicit IndexedSet(std::size_t capacity = 0) : pos_(capacity, -1) {}

    void reset(std::size_t capacity)
    {
        items_.clear();
        pos_.assign(capacity, -1);
    }

    bool contains(int v) const { return pos_[v] >= 0; }
    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    int operator[](std::size_t i) const { return items_[i]; }
    const std::vector<int>& items() const { return items_; }

    void insert(int v)
    {
        if (pos_[v] >= 0)
            return;
        pos_[v] = static_cast<int>(items_.size());
        items_.push_back(v);
    }

    void erase(int v)
    {
        int p = pos_[v];
        if (p < 0)
            return;
        int last = items_.back();
        items_[p] = last;
        pos_[last] = p;
        items_.pop_back();
        pos_[v] = -1;
    }

    void assign(int v, bool present)
    {
        if (present)
            insert(v);
        else
            erase(v);
    }

private:
    std::vector<int> items_;
    std::vector<int> pos_;
};

}  // namespace fep
