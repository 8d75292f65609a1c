#pragma once

#include <memory>
#include <vector>

#include "graphbench/key.hpp"

namespace graphbench {

// Seekable sorted stream of entries. This is the unit every iterator
// consumes and produces: between seeks, keys come out in strictly ascending
// key order. seek() repositions to the first entry at or after the start of
// the given row range and constrains output to that range; it may be called
// repeatedly with ascending ranges.
class EntryStream {
 public:
  virtual ~EntryStream() = default;
  virtual void seek(const RowRange& range) = 0;
  virtual bool hasNext() = 0;
  virtual const Entry& peek() = 0;
  virtual Entry next() = 0;
};

using StreamPtr = std::unique_ptr<EntryStream>;

// Stream over a sorted entry vector, optionally shared with other readers.
class VectorStream : public EntryStream {
 public:
  explicit VectorStream(std::shared_ptr<const std::vector<Entry>> data);
  explicit VectorStream(std::vector<Entry> data);

  void seek(const RowRange& range) override;
  bool hasNext() override;
  const Entry& peek() override;
  Entry next() override;

 private:
  std::shared_ptr<const std::vector<Entry>> data_;
  size_t pos_ = 0;
  size_t limit_ = 0;
};

// K-way merge of sorted streams into one sorted stream. Ties on identical
// keys keep the earlier input first. Throws StreamOrderError if an input
// regresses.
class MergeStream : public EntryStream {
 public:
  explicit MergeStream(std::vector<StreamPtr> inputs);

  void seek(const RowRange& range) override;
  bool hasNext() override;
  const Entry& peek() override;
  Entry next() override;

 private:
  void sift();

  std::vector<StreamPtr> inputs_;
  std::vector<size_t> heap_;
  bool primed_ = false;
};

// Concatenation of streams whose key spaces are already in ascending order,
// e.g. per-tablet streams of one table.
class ConcatStream : public EntryStream {
 public:
  explicit ConcatStream(std::vector<StreamPtr> inputs);

  void seek(const RowRange& range) override;
  bool hasNext() override;
  const Entry& peek() override;
  Entry next() override;

 private:
  std::vector<StreamPtr> inputs_;
  size_t cur_ = 0;
};

// Restricts an inner stream to a normalized range list by seeking it range
// by range. An empty list passes the whole stream through.
class RangeSetStream : public EntryStream {
 public:
  RangeSetStream(StreamPtr input, std::vector<RowRange> ranges);

  void seek(const RowRange& range) override;
  bool hasNext() override;
  const Entry& peek() override;
  Entry next() override;

 private:
  void advance();

  StreamPtr input_;
  std::vector<RowRange> ranges_;
  RowRange ext_;
  size_t cur_ = 0;
  bool entered_ = false;
};

// Reads the stream to exhaustion.
std::vector<Entry> drain(EntryStream& s);

}  // namespace graphbench
