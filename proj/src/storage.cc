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

#include "reasonlink/storage.h"

#include <sqlite3.h>

namespace reasonlink {

std::optional<std::string> MemoryKvStore::Get(std::string_view key) const {
  std::lock_guard lock(mu_);
  auto it = data_.find(key);
  if (it == data_.end()) return std::nullopt;
  return it->second;
}

std::vector<KeyValue> MemoryKvStore::Scan(std::string_view prefix) const {
  std::lock_guard lock(mu_);
  std::vector<KeyValue> out;
  for (auto it = data_.lower_bound(prefix);
       it != data_.end() && std::string_view(it->first).starts_with(prefix); ++it) {
    out.emplace_back(it->first, it->second);
  }
  return out;
}

void MemoryKvStore::Commit(const std::vector<KeyValue>& puts) {
  std::lock_guard lock(mu_);
  for (const auto& [k, v] : puts) data_[k] = v;
}

namespace {

class Statement {
 public:
  Statement(sqlite3* db, const char* sql) {
    if (sqlite3_prepare_v2(db, sql, -1, &stmt_, nullptr) != SQLITE_OK) {
      throw StorageError(std::string("prepare failed: ") + sqlite3_errmsg(db));
    }
  }
  ~Statement() { sqlite3_finalize(stmt_); }
  Statement(const Statement&) = delete;
  Statement& operator=(const Statement&) = delete;

  void Bind(int index, std::string_view text) {
    sqlite3_bind_text(stmt_, index, text.data(), static_cast<int>(text.size()), SQLITE_TRANSIENT);
  }
  void BindBlob(int index, std::string_view bytes) {
    sqlite3_bind_blob(stmt_, index, bytes.data(), static_cast<int>(bytes.size()),
                      SQLITE_TRANSIENT);
  }
  int Step() { return sqlite3_step(stmt_); }
  void Reset() {
    sqlite3_reset(stmt_);
    sqlite3_clear_bindings(stmt_);
  }
  std::string Column(int index) const {
    const auto* p = static_cast<const char*>(sqlite3_column_blob(stmt_, index));
    return p == nullptr ? std::string() : std::string(p, sqlite3_column_bytes(stmt_, index));
  }

 private:
  sqlite3_stmt* stmt_ = nullptr;
};

}  // namespace

std::unique_ptr<SqliteKvStore> SqliteKvStore::Open(const std::string& path) {
  sqlite3* db = nullptr;
  const int rc = sqlite3_open_v2(path.c_str(), &db,
                                 SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE | SQLITE_OPEN_FULLMUTEX,
                                 nullptr);
  if (rc != SQLITE_OK) {
    std::string msg = db ? sqlite3_errmsg(db) : "out of memory";
    sqlite3_close(db);
    throw StorageError("cannot open store '" + path + "': " + msg);
  }
  std::unique_ptr<SqliteKvStore> store(new SqliteKvStore(db));
  store->Exec("PRAGMA journal_mode=WAL");
  store->Exec("PRAGMA synchronous=FULL");
  store->Exec("PRAGMA busy_timeout=5000");
  store->Exec("CREATE TABLE IF NOT EXISTS kv (k TEXT PRIMARY KEY, v BLOB NOT NULL) WITHOUT ROWID");
  return store;
}

SqliteKvStore::~SqliteKvStore() { sqlite3_close(db_); }

void SqliteKvStore::Exec(const char* sql) const {
  char* err = nullptr;
  if (sqlite3_exec(db_, sql, nullptr, nullptr, &err) != SQLITE_OK) {
    std::string msg = err ? err : "unknown error";
    sqlite3_free(err);
    throw StorageError(std::string("sqlite: ") + msg + " (" + sql + ")");
  }
}

std::optional<std::string> SqliteKvStore::Get(std::string_view key) const {
  std::lock_guard lock(mu_);
  Statement stmt(db_, "SELECT v FROM kv WHERE k = ?1");
  stmt.Bind(1, key);
  const int rc = stmt.Step();
  if (rc == SQLITE_ROW) return stmt.Column(0);
  if (rc != SQLITE_DONE) throw StorageError(std::string("get: ") + sqlite3_errmsg(db_));
  return std::nullopt;
}

std::vector<KeyValue> SqliteKvStore::Scan(std::string_view prefix) const {
  std::lock_guard lock(mu_);
  // [prefix, prefix with its last byte incremented) covers every key with the
  // prefix; keys are ASCII.
  std::string upper(prefix);
  while (!upper.empty() && static_cast<unsigned char>(upper.back()) == 0xff) upper.pop_back();
  if (!upper.empty()) upper.back() = static_cast<char>(upper.back() + 1);
  Statement stmt(db_, upper.empty() ? "SELECT k, v FROM kv WHERE k >= ?1 ORDER BY k"
                                    : "SELECT k, v FROM kv WHERE k >= ?1 AND k < ?2 ORDER BY k");
  stmt.Bind(1, prefix);
  if (!upper.empty()) stmt.Bind(2, upper);
  std::vector<KeyValue> out;
  int rc;
  while ((rc = stmt.Step()) == SQLITE_ROW) out.emplace_back(stmt.Column(0), stmt.Column(1));
  if (rc != SQLITE_DONE) throw StorageError(std::string("scan: ") + sqlite3_errmsg(db_));
  return out;
}

void SqliteKvStore::Commit(const std::vector<KeyValue>& puts) {
  std::lock_guard lock(mu_);
  Exec("BEGIN IMMEDIATE");
  try {
    Statement stmt(db_, "INSERT OR REPLACE INTO kv (k, v) VALUES (?1, ?2)");
    for (const auto& [k, v] : puts) {
      stmt.Bind(1, k);
      stmt.BindBlob(2, v);
      if (stmt.Step() != SQLITE_DONE) {
        throw StorageError(std::string("put: ") + sqlite3_errmsg(db_));
      }
      stmt.Reset();
    }
    Exec("COMMIT");
  } catch (...) {
    sqlite3_exec(db_, "ROLLBACK", nullptr, nullptr, nullptr);
    throw;
  }
}

}  // namespace reasonlink
