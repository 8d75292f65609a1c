#include "graphbench/stream.hpp"

#include <algorithm>

#include "graphbench/errors.hpp"

namespace graphbench {

VectorStream::VectorStream(std::shared_ptr<const std::vector<Entry>> data)
    : data_(std::move(data)), limit_(data_->size()) {}

VectorStream::VectorStream(std::vector<Entry> data)
    : VectorStream(std::make_shared<const std::vector<Entry>>(std::move(data))) {}

void VectorStream::seek(const RowRange& range) {
  auto rowLess = [](const Entry& e, const std::string& row) {
    return e.key.row < row;
  };
  pos_ = std::lower_bound(data_->begin(), data_->end(), range.begin, rowLess) -
         data_->begin();
  limit_ = range.end ? std::lower_bound(data_->begin(), data_->end(),
                                        *range.end, rowLess) -
                           data_->begin()
                     : data_->size();
}

bool VectorStream::hasNext() { return pos_ < limit_; }

const Entry& VectorStream::peek() { return (*data_)[pos_]; }

Entry VectorStream::next() { return (*data_)[pos_++]; }

MergeStream::MergeStream(std::vector<StreamPtr> inputs)
    : inputs_(std::move(inputs)) {}

void MergeStream::seek(const RowRange& range) {
  for (auto& in : inputs_) in->seek(range);
  heap_.clear();
  primed_ = false;
}

namespace {
// Min-heap ordering over stream heads; ties go to the earlier input.
struct HeadAfter {
  std::vector<StreamPtr>& inputs;
  bool operator()(size_t a, size_t b) const {
    const Key& ka = inputs[a]->peek().key;
    const Key& kb = inputs[b]->peek().key;
    if (ka < kb) return false;
    if (kb < ka) return true;
    return a > b;
  }
};
}  // namespace

void MergeStream::sift() {
  if (primed_) return;
  heap_.clear();
  for (size_t i = 0; i < inputs_.size(); ++i)
    if (inputs_[i]->hasNext()) heap_.push_back(i);
  std::make_heap(heap_.begin(), heap_.end(), HeadAfter{inputs_});
  primed_ = true;
}

bool MergeStream::hasNext() {
  sift();
  return !heap_.empty();
}

const Entry& MergeStream::peek() {
  sift();
  return inputs_[heap_.front()]->peek();
}

Entry MergeStream::next() {
  sift();
  HeadAfter cmp{inputs_};
  std::pop_heap(heap_.begin(), heap_.end(), cmp);
  size_t idx = heap_.back();
  Entry taken = inputs_[idx]->next();
  if (inputs_[idx]->hasNext()) {
    if (inputs_[idx]->peek().key < taken.key)
      throw StreamOrderError("merge input " + std::to_string(idx) +
                             " produced keys out of order near row '" +
                             taken.key.row + "'");
    std::push_heap(heap_.begin(), heap_.end(), cmp);
  } else {
    heap_.pop_back();
  }
  return taken;
}

ConcatStream::ConcatStream(std::vector<StreamPtr> inputs)
    : inputs_(std::move(inputs)) {}

void ConcatStream::seek(const RowRange& range) {
  for (auto& in : inputs_) in->seek(range);
  cur_ = 0;
}

bool ConcatStream::hasNext() {
  while (cur_ < inputs_.size() && !inputs_[cur_]->hasNext()) ++cur_;
  return cur_ < inputs_.size();
}

const Entry& ConcatStream::peek() {
  hasNext();
  return inputs_[cur_]->peek();
}

Entry ConcatStream::next() {
  hasNext();
  return inputs_[cur_]->next();
}

RangeSetStream::RangeSetStream(StreamPtr input, std::vector<RowRange> ranges)
    : input_(std::move(input)), ranges_(normalizeRanges(std::move(ranges))) {
  if (ranges_.empty()) ranges_.push_back(RowRange::all());
}

void RangeSetStream::seek(const RowRange& range) {
  // Intersect the external request with the configured range list by
  // clamping each configured range during advance().
  ext_ = range;
  cur_ = 0;
  entered_ = false;
}

namespace {
RowRange clamp(const RowRange& a, const RowRange& b) {
  RowRange r;
  r.begin = std::max(a.begin, b.begin);
  if (a.end && b.end)
    r.end = std::min(*a.end, *b.end);
  else
    r.end = a.end ? a.end : b.end;
  return r;
}
}  // namespace

void RangeSetStream::advance() {
  while (cur_ < ranges_.size()) {
    RowRange eff = clamp(ranges_[cur_], ext_);
    if (eff.emptyInterval()) {
      ++cur_;
      entered_ = false;
      continue;
    }
    if (!entered_) {
      input_->seek(eff);
      entered_ = true;
    }
    if (input_->hasNext()) return;
    ++cur_;
    entered_ = false;
  }
}

bool RangeSetStream::hasNext() {
  advance();
  return cur_ < ranges_.size();
}

const Entry& RangeSetStream::peek() {
  advance();
  return input_->peek();
}

Entry RangeSetStream::next() {
  advance();
  return input_->next();
}

std::vector<Entry> drain(EntryStream& s) {
  std::vector<Entry> out;
  while (s.hasNext()) out.push_back(s.next());
  return out;
}

}  // namespace graphbench
