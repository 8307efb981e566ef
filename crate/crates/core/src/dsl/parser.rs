use super::ast::{Definition, Expr, SourceSpan};
use super::lexer::{tokenize, Tok, Token};
use super::ParseError;

/// Parses exactly one definition.
///
/// ```text
/// def  := name "(" ident ")" "=" expr
/// expr := "if" expr "=" "0" "then" expr "else" expr | sum
/// sum  := sum ("+" | "-") atom | atom
/// atom := NAT | ident | name "(" expr ")" | "(" expr ")"
/// ```
pub fn parse_def(text: &str) -> Result<Definition, ParseError> {
    let tokens = tokenize(text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        name: String::new(),
        param: String::new(),
    };
    let def = p.definition()?;
    p.finish()?;
    Ok(def)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    name: String,
    param: String,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn peek_at(&self, ahead: usize) -> &Tok {
        let i = (self.pos + ahead).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        let t = self.peek();
        ParseError::Syntax {
            span: t.span,
            message: format!("expected {expected}, found {}", t.tok.describe()),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Token, ParseError> {
        if self.peek().tok == tok {
            Ok(self.bump())
        } else {
            Err(self.unexpected(what))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn definition(&mut self) -> Result<Definition, ParseError> {
        self.name = self.ident("a function name")?;
        self.expect(Tok::LParen, "`(`")?;
        self.param = self.ident("a parameter name")?;
        self.expect(Tok::RParen, "`)`")?;
        self.expect(Tok::Eq, "`=`")?;
        let body = self.expr()?;
        Ok(Definition {
            name: self.name.clone(),
            param: self.param.clone(),
            body,
        })
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match (&self.peek().tok, self.peek_at(1)) {
            (Tok::Eof, _) => Ok(()),
            (Tok::Ident(_), Tok::LParen) => {
                // Something shaped like a second definition header.
                let start = self.peek().span.start;
                let end = self.tokens.last().map_or(start, |t| t.span.end);
                Err(ParseError::MultipleDefinitions {
                    span: SourceSpan::new(start, end),
                })
            }
            _ => Err(self.unexpected("end of input")),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        if self.peek().tok != Tok::If {
            return self.sum();
        }
        self.bump();
        let cond = self.expr()?;
        self.expect(Tok::Eq, "`=` in the condition")?;
        match &self.peek().tok {
            Tok::Nat(0, text) if text == "0" => {
                self.bump();
            }
            _ => return Err(self.unexpected("`0` (conditions compare against zero)")),
        }
        self.expect(Tok::Then, "`then`")?;
        let then_branch = self.expr()?;
        self.expect(Tok::Else, "`else`")?;
        let else_branch = self.expr()?;
        Ok(Expr::if_zero(cond, then_branch, else_branch))
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.atom()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::add(lhs, self.atom()?);
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::monus(lhs, self.atom()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let token = self.peek().clone();
        match token.tok {
            Tok::Nat(v, _) => {
                self.bump();
                Ok(Expr::Nat(v))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Ident(id) if *self.peek_at(1) == Tok::LParen => {
                if id != self.name {
                    return Err(ParseError::UnknownFunction {
                        name: id,
                        span: token.span,
                    });
                }
                self.bump();
                self.bump();
                let arg = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Expr::call(arg))
            }
            Tok::Ident(id) => {
                if id != self.param {
                    return Err(ParseError::UnknownIdentifier {
                        name: id,
                        span: token.span,
                    });
                }
                self.bump();
                Ok(Expr::Param)
            }
            _ => Err(self.unexpected("an expression")),
        }
    }
}
