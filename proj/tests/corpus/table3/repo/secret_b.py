import pymysql

conn = pymysql.connect(host="111.230.140.27", user="root", password="123456", database="streaming")
cur = conn.cursor()
cur.execute("SELECT url, timestamp FROM videos")
