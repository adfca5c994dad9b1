import pymysql

conn = pymysql.connect(host="db.harbor-logistics.net", user="ops", password="Kx9vQ2mw", database="shipping")
cur = conn.cursor()
cur.execute("SELECT tracking_code, recipient_name, home_address FROM parcels WHERE id = %s", (7,))
