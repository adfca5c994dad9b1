import pymysql

conn = pymysql.connect(host="127.0.0.1", user="root", password="Fm)4dj", database="ledger")
cur = conn.cursor()
cur.execute("SELECT blockchain, wallet_address FROM blockchain_transactions")
