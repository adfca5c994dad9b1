import peewee

db = peewee.MySQLDatabase("library", host="10.20.30.40", user="lib", password="B00kw0rm")


class Loan(peewee.Model):
    borrower = peewee.CharField()
    isbn = peewee.CharField()
    due = peewee.DateField()

    class Meta:
        database = db
        table_name = "loans"
