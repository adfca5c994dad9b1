import pymysql

conn = pymysql.connect(host="120.77.222.217", user="root", password="123456", database="club")
cur = conn.cursor()
cur.execute("SELECT phone, email FROM members")
