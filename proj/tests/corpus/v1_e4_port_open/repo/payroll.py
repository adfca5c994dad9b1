import pymssql

schema = "dbo"
conn = pymssql.connect(server="52.14.88.9", port=1433, user="sa", password="Payr0ll!Sa", database="hr")
cur = conn.cursor()
cur.execute(f"SELECT employee_name, salary, bank_account FROM {schema}.payroll")
