import pymysql

db = pymysql.connect(host="120.77.222.219", user="root", password="Cl0udM3mber", database="club")
cursor = db.cursor()
cursor.execute("INSERT INTO members (full_name, phone, email) VALUES (%s, %s, %s)", ("a", "b", "c"))
db.commit()
