"""Freezes reference table/column sets for SQL statements.

SQLite compiles each statement against a fixed schema and its authorizer
callback reports every base table read or written and every column read or
updated, after alias, CTE and subquery resolution. INSERT target columns
are not reported by the authorizer; those statements are marked so the
comparison treats the reference columns as a lower bound.
"""
import json
import re
import sqlite3
import sys
from pathlib import Path

SCHEMA = """
CREATE TABLE users(id, name, email, phone, dept_id, created_at, password);
CREATE TABLE depts(id PRIMARY KEY, title, budget);
CREATE TABLE orders(id, user_id, total, status, created_at);
CREATE TABLE items(id, order_id, sku, qty, price);
CREATE TABLE payments(id, order_id, card_number, amount);
CREATE TABLE audit_log(id, actor, action, at);
CREATE TABLE patients(id, name, ssn, disease, birth_date);
"""

STATEMENTS = [
    "SELECT name, email FROM users",
    "SELECT id FROM users WHERE email = 'a@b.c'",
    "SELECT u.name FROM users u",
    "SELECT users.name, users.phone FROM users",
    "SELECT u.name, d.title FROM users u JOIN depts d ON d.id = u.dept_id",
    "SELECT u.name, d.title FROM users AS u LEFT JOIN depts AS d ON u.dept_id = d.id WHERE d.budget > 100",
    "SELECT o.total, i.sku FROM orders o INNER JOIN items i ON i.order_id = o.id WHERE o.status = 'paid'",
    "SELECT COUNT(*) FROM orders",
    "SELECT status, COUNT(id) FROM orders GROUP BY status HAVING COUNT(id) > 2",
    "SELECT name AS n FROM users ORDER BY n",
    "SELECT name FROM users ORDER BY created_at DESC LIMIT 10 OFFSET 5",
    "SELECT DISTINCT dept_id FROM users",
    "SELECT id FROM users WHERE dept_id IN (SELECT id FROM depts WHERE budget > 5)",
    "SELECT name FROM users u WHERE EXISTS (SELECT 1 FROM orders o WHERE o.user_id = u.id)",
    "SELECT t.total FROM (SELECT total, user_id FROM orders) AS t WHERE t.user_id = 3",
    "WITH big AS (SELECT user_id, total FROM orders WHERE total > 100) SELECT user_id FROM big",
    "WITH a AS (SELECT id, name FROM users), b AS (SELECT user_id FROM orders) SELECT a.name FROM a JOIN b ON b.user_id = a.id",
    "SELECT name FROM users UNION SELECT title FROM depts",
    "SELECT email FROM users UNION ALL SELECT actor FROM audit_log",
    "SELECT CASE WHEN total > 10 THEN 'big' ELSE 'small' END AS size FROM orders",
    "SELECT UPPER(name), LENGTH(email) FROM users",
    "SELECT COALESCE(phone, email) FROM users WHERE id = ?",
    "SELECT name FROM users WHERE created_at BETWEEN :start AND :end",
    "SELECT sku, SUM(qty * price) FROM items GROUP BY sku",
    "SELECT user_id, total, ROW_NUMBER() OVER (PARTITION BY user_id ORDER BY created_at) FROM orders",
    "SELECT p.card_number FROM payments p JOIN orders o ON o.id = p.order_id JOIN users u ON u.id = o.user_id WHERE u.email LIKE '%@corp.com'",
    "SELECT ssn, disease FROM patients WHERE birth_date < '1990-01-01'",
    "SELECT `name` FROM `users`",
    "SELECT [title] FROM [depts]",
    "SELECT \"phone\" FROM \"users\"",
    "SELECT MAX(amount) FROM payments WHERE order_id = 7",
    "SELECT u.id, (SELECT COUNT(*) FROM orders o WHERE o.user_id = u.id) AS n FROM users u",
    "SELECT name FROM users WHERE id = 1 AND (email IS NULL OR phone IS NOT NULL)",
    "SELECT CAST(total AS INTEGER) FROM orders",
    "SELECT a.name, b.name FROM users a CROSS JOIN users b",
    "INSERT INTO users (name, email) VALUES ('a', 'b')",
    "INSERT INTO orders (user_id, total) VALUES (?, ?)",
    "INSERT INTO audit_log (actor, action) SELECT name, 'login' FROM users WHERE id = 3",
    "INSERT INTO depts (id, title) VALUES (1, 'x') ON CONFLICT(id) DO UPDATE SET title = excluded.title",
    "INSERT INTO items (order_id, sku) VALUES (1, 'a'), (2, 'b')",
    "UPDATE users SET email = 'x' WHERE id = 2",
    "UPDATE users SET name = ?, phone = ? WHERE email = ?",
    "UPDATE orders SET status = 'void' WHERE user_id IN (SELECT id FROM users WHERE dept_id = 4)",
    "UPDATE depts SET budget = budget + 10",
    "UPDATE patients SET disease = NULL WHERE ssn = '1'",
    "DELETE FROM orders WHERE total < 0",
    "DELETE FROM audit_log",
    "DELETE FROM items WHERE order_id IN (SELECT id FROM orders WHERE status = 'void')",
    "DELETE FROM users WHERE NOT EXISTS (SELECT 1 FROM orders o WHERE o.user_id = users.id)",
    "SELECT id FROM orders WHERE created_at > (SELECT MAX(created_at) FROM audit_log a JOIN users u ON u.name = a.actor)",
]


def reference(conn, sql):
    tables, columns, pairs = set(), set(), set()

    def authorizer(action, arg1, arg2, db, source):
        if action in (sqlite3.SQLITE_READ, sqlite3.SQLITE_UPDATE) and arg1 and not arg1.startswith("sqlite_"):
            tables.add(arg1.lower())
            if arg2:
                columns.add(arg2.lower())
                pairs.add((arg1.lower(), arg2.lower()))
        elif action in (sqlite3.SQLITE_INSERT, sqlite3.SQLITE_DELETE) and arg1 and not arg1.startswith("sqlite_"):
            tables.add(arg1.lower())
        return sqlite3.SQLITE_OK

    conn.set_authorizer(authorizer)
    try:
        params = dict.fromkeys(re.findall(r":(\w+)", sql)) or (None,) * sql.count("?")
        conn.execute("EXPLAIN " + sql, params)
    finally:
        conn.set_authorizer(None)
    return tables, columns, pairs


def main(out_path):
    conn = sqlite3.connect(":memory:")
    conn.executescript(SCHEMA)
    cases = []
    for sql in STATEMENTS:
        tables, columns, pairs = reference(conn, sql)
        cases.append({
            "sql": sql,
            "tables": sorted(tables),
            "columns": sorted(columns),
            "table_columns": sorted([t, c] for t, c in pairs),
            "columns_lower_bound": sql.lstrip().upper().startswith("INSERT"),
        })
    Path(out_path).write_text(json.dumps({"generator": "gen_sql_oracle.py", "sqlite": sqlite3.sqlite_version,
                                          "cases": cases}, indent=1) + "\n")
    print(f"{len(cases)} statements -> {out_path}")


if __name__ == "__main__":
    main(sys.argv[1])
