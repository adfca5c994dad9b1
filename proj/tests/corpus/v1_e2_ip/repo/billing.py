import psycopg2

TABLE = "invoices"
conn = psycopg2.connect(host="192.168.10.4", user="billing", password="Inv0ice_2023", dbname="ledger")
query = "SELECT amount, iban, due_date FROM " + TABLE + " WHERE paid = false"
with conn.cursor() as cur:
    cur.execute(query)
