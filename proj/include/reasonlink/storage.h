// Copyright 2026 The ReasonLink Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef REASONLINK_STORAGE_H_
#define REASONLINK_STORAGE_H_

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

struct sqlite3;

namespace reasonlink {

class StorageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using KeyValue = std::pair<std::string, std::string>;

// Ordered key-value store. Commit is atomic and durable on return.
class KvStore {
 public:
  virtual ~KvStore() = default;

  virtual std::optional<std::string> Get(std::string_view key) const = 0;
  // All pairs whose key starts with prefix, in key order.
  virtual std::vector<KeyValue> Scan(std::string_view prefix) const = 0;
  virtual void Commit(const std::vector<KeyValue>& puts) = 0;
};

class MemoryKvStore : public KvStore {
 public:
  std::optional<std::string> Get(std::string_view key) const override;
  std::vector<KeyValue> Scan(std::string_view prefix) const override;
  void Commit(const std::vector<KeyValue>& puts) override;

 private:
  mutable std::mutex mu_;
  std::map<std::string, std::string, std::less<>> data_;
};

// SQLite file in WAL mode with synchronous=FULL; one transaction per Commit.
class SqliteKvStore : public KvStore {
 public:
  // Throws StorageError if the file cannot be opened or initialized.
  static std::unique_ptr<SqliteKvStore> Open(const std::string& path);
  ~SqliteKvStore() override;

  std::optional<std::string> Get(std::string_view key) const override;
  std::vector<KeyValue> Scan(std::string_view prefix) const override;
  void Commit(const std::vector<KeyValue>& puts) override;

 private:
  explicit SqliteKvStore(sqlite3* db) : db_(db) {}
  void Exec(const char* sql) const;

  mutable std::mutex mu_;
  sqlite3* db_;
};

}  // namespace reasonlink

#endif  // REASONLINK_STORAGE_H_
